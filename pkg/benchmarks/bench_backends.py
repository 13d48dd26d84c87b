"""Compare the compiled and pure-Python closure kernels.

    python benchmarks/bench_backends.py [--sizes 250,500,1000,2000] [--family layered]

Prints per-size median solve times for each available backend and the
speedup of the compiled kernels.
"""

import argparse
import json

from closuresat import bench, kernels


def compare(sizes, family, reps, seed):
    reports = {
        name: bench.run_bench(sizes, reps, seed, family, backend=name)
        for name in kernels.available()
    }
    rows = []
    for i, size in enumerate(sizes):
        row = {"target_size": size}
        for name, rep in reports.items():
            row[name] = rep["points"][i]["median_seconds"]
        if "compiled" in row and "python" in row and row["compiled"] > 0:
            row["speedup"] = row["python"] / row["compiled"]
        rows.append(row)
    slopes = {name: rep["loglog_slope"] for name, rep in reports.items()}
    return {"family": family, "reps": reps, "seed": seed, "rows": rows, "loglog_slope": slopes}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")],
                    default=[250, 500, 1000, 2000])
    ap.add_argument("--family", choices=sorted(bench.FAMILIES), default="layered")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    result = compare(args.sizes, args.family, args.reps, args.seed)
    if args.json:
        print(json.dumps(result, indent=2))
        return
    names = [n for n in ("compiled", "python") if n in result["loglog_slope"]]
    print(f"family={result['family']} reps={result['reps']}")
    print(f"{'size':>8}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for row in result["rows"]:
        speed = f"{row['speedup']:>9.1f}x" if "speedup" in row else f"{'-':>10}"
        print(f"{row['target_size']:>8}" + "".join(f"{row[n]:>12.5f}" for n in names) + speed)
    print("log-log slope: " + ", ".join(
        f"{n}={s:.2f}" for n, s in result["loglog_slope"].items() if s is not None))


if __name__ == "__main__":
    main()

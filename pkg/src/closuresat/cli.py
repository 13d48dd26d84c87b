"""Command-line entry point.

Exit codes: 10 satisfiable, 20 unsatisfiable, 0 clean campaign (or plain
success), 1 campaign with findings, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, kernels
from .closure import closure, is_redundant
from .cnf import ParseError, emit_dimacs, read_formula, sorted_literals
from .harness import (
    KINDS,
    CheckConfig,
    ContractError,
    GenParams,
    ParameterError,
    dump_report,
    enumerate_campaign,
    finding_predicate,
    fuzz_campaign,
    shrink,
    write_bundles,
)
from .oracle import CapacityError, OracleDisagreement, OracleTimeout, decide
from .probe import probe_reduced_preservation
from .solver import solve

EXIT_SAT, EXIT_UNSAT, EXIT_CLEAN, EXIT_FINDINGS, EXIT_USAGE = 10, 20, 0, 1, 2


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or ``"a"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <a..b> or <n>, got {text!r}") from None


def _literal(text: str) -> int:
    v = int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("literal must be nonzero")
    return v


def _fmt_set(lits) -> str:
    return "{" + ", ".join(map(str, sorted_literals(lits))) + "}"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _config(args) -> CheckConfig:
    return CheckConfig(
        oracle=getattr(args, "oracle", "auto"),
        order=getattr(args, "order", "forward"),
        drop_tautologies=getattr(args, "drop_tautologies", False),
    )


def cmd_solve(args) -> int:
    f = read_formula(args.file)
    out = solve(f, args.order)
    lines = ["SATISFIABLE" if out.sat else "UNSATISFIABLE"]
    if out.sat:
        lines.append(f"T = {_fmt_set(out.assignment)}")
    else:
        lines.append(f"reduced residue: {len(out.final_formula)} clauses")
    if out.conflicts:
        lines.append(f"conflicts: {[(c.step, c.literal) for c in out.conflicts]}")
    if args.trace:
        for i, s in enumerate(out.trace):
            lines.append(
                f"step {i}: z={s.chosen} S={_fmt_set(s.closure_literals)} "
                f"removed={len(s.removed)} remaining_size={s.remaining_size}"
            )
    _emit(args, out.to_json(trace=args.trace or args.json), "\n".join(lines))
    return EXIT_SAT if out.sat else EXIT_UNSAT


def cmd_closure(args) -> int:
    f = read_formula(args.file)
    r = closure(f, args.literal)
    payload = r.to_json()
    payload["redundant"] = is_redundant(f, args.literal)
    lines = [f"stage {k}: {_fmt_set(s)}" for k, s in enumerate(r.growing_stages())]
    lines.append(f"closure: {_fmt_set(r.closure)}")
    lines.append("covered:")
    lines.extend(f"  {c}" for c in payload["covered"])
    lines.append(f"redundant: {'yes' if payload['redundant'] else 'no'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_CLEAN


def cmd_oracle(args) -> int:
    f = read_formula(args.file)
    v = decide(f, args.oracle)
    text = "SATISFIABLE" if v.sat else "UNSATISFIABLE"
    if v.sat:
        text += f"\nwitness = {_fmt_set(v.witness)}"
    text += f"\nmethod={v.method} decisions={v.decisions}"
    _emit(args, v.to_json(), text)
    return EXIT_SAT if v.sat else EXIT_UNSAT


def cmd_probe(args) -> int:
    f = read_formula(args.file)
    pivots = [args.var] if args.var else sorted(f.variables())
    reports = [
        probe_reduced_preservation(f, x, drop_tautologies=args.drop_tautologies) for x in pivots
    ]
    lines = []
    for r in reports:
        lines.append(
            f"x{r.pivot}: input_reduced={r.input_reduced} n0={r.n0} n1={r.n1} "
            f"g_clauses={len(r.g)} g_reduced={r.g_reduced} "
            f"g_sat={None if r.g_oracle is None else r.g_oracle.sat} "
            f"violated={list(r.claims_violated) or '-'}"
        )
    _emit(args, {"reports": [r.to_json() for r in reports]}, "\n".join(lines) or "no variables")
    return EXIT_FINDINGS if any(r.claims_violated for r in reports) else EXIT_CLEAN


def _finish_campaign(args, report: dict) -> int:
    if args.out:
        write_bundles(report, args.out)
    if args.json:
        sys.stdout.write(dump_report(report))
    else:
        t = report["totals"]
        print(f"instances: {report['instances']}")
        for k, v in t.items():
            print(f"  {k}: {v}")
        if "probe_totals" in report:
            print("probe totals: " + ", ".join(f"{k}={v}" for k, v in report["probe_totals"].items()))
        print(f"distinct counterexamples: {len(report['distinct_counterexamples'])}")
        for g in report["distinct_counterexamples"][:10]:
            body = " | ".join(g["shrunk"].strip().splitlines()[1:])
            print(f"  {g['kind']} {g['detail'] or ''} x{len(g['instances'])}: {body}")
    return EXIT_FINDINGS if report["non_agreement"] else EXIT_CLEAN


def cmd_fuzz(args) -> int:
    params = GenParams(
        seed=args.seed,
        n_vars=args.vars,
        n_clauses=args.clauses,
        clause_width=args.width,
        allow_tautologies=args.tautologies,
        allow_empty_clause=args.empty_clauses,
    )
    report = fuzz_campaign(params, args.instances, _config(args), args.probe, args.jobs)
    return _finish_campaign(args, report)


def cmd_enumerate(args) -> int:
    report = enumerate_campaign(
        args.vars,
        args.clauses,
        args.width,
        _config(args),
        args.probe,
        args.jobs,
        allow_tautologies=args.tautologies,
    )
    return _finish_campaign(args, report)


def cmd_shrink(args) -> int:
    f = read_formula(args.file)
    record = {"kind": args.kind, "detail": {}}
    if args.kind == "probe_violation":
        if not args.var:
            raise ContractError("--var is required for probe_violation")
        claims = probe_reduced_preservation(f, args.var).claims_violated
        record["detail"] = {"pivot": args.var, "claims": list(claims)}
    small = shrink(f, finding_predicate(record, _config(args)))
    _emit(args, {"kind": args.kind, "input": emit_dimacs(f), "shrunk": emit_dimacs(small)}, emit_dimacs(small).rstrip())
    return EXIT_CLEAN


def cmd_bench(args) -> int:
    report = bench.run_bench(args.sizes, args.reps, args.seed, args.family, args.backend)
    _emit(args, report, bench.format_bench(report))
    return EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="closuresat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order=True):
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        if order:
            sp.add_argument("--order", choices=["forward", "reverse"], default="forward",
                            help="redundant-literal scan order")

    def oracle_flag(sp):
        sp.add_argument("--oracle", choices=["auto", "enum", "dpll", "both"], default="auto")

    sp = sub.add_parser("solve", help="run the reduction solver")
    sp.add_argument("file", help="DIMACS file or - for stdin")
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("closure", help="staged closure of one literal")
    sp.add_argument("file")
    sp.add_argument("--literal", type=_literal, required=True)
    common(sp, order=False)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("oracle", help="decide with the reference oracles")
    sp.add_argument("file")
    oracle_flag(sp)
    common(sp, order=False)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("probe", help="resolution probe on one or all variables")
    sp.add_argument("file")
    sp.add_argument("--var", type=int)
    sp.add_argument("--drop-tautologies", action="store_true")
    common(sp, order=False)
    sp.set_defaults(func=cmd_probe)

    def campaign(sp):
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", help="directory for counterexample bundles")
        sp.add_argument("--probe", action="store_true", help="also run resolution probes")
        sp.add_argument("--tautologies", action="store_true", help="allow tautological clauses")
        sp.add_argument("--drop-tautologies", action="store_true",
                        help="drop tautological resolvents in probes")
        oracle_flag(sp)
        common(sp)

    sp = sub.add_parser("fuzz", help="seeded random differential campaign")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=1000)
    sp.add_argument("--vars", type=parse_range, default=(3, 8))
    sp.add_argument("--clauses", type=parse_range, default=(1, 20))
    sp.add_argument("--width", type=parse_range, default=(1, 3))
    sp.add_argument("--empty-clauses", action="store_true")
    campaign(sp)
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("enumerate", help="exhaustive differential campaign on small formulas")
    sp.add_argument("--vars", type=int, default=3)
    sp.add_argument("--clauses", type=int, default=4)
    sp.add_argument("--width", type=int, default=3)
    campaign(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("shrink", help="minimize a formula while it keeps a finding kind")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=[k for k in KINDS if k != "agreement"], required=True)
    sp.add_argument("--var", type=int, help="pivot for probe_violation")
    oracle_flag(sp)
    common(sp)
    sp.set_defaults(func=cmd_shrink)

    sp = sub.add_parser("bench", help="solve timings over a size ladder")
    sp.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")],
                    default=list(bench.DEFAULT_SIZES))
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--family", choices=sorted(bench.FAMILIES), default="random")
    sp.add_argument("--backend", choices=["auto", "compiled", "python"], default="auto")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ParameterError, ContractError, CapacityError, OSError, ValueError) as exc:
        print(f"closuresat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleTimeout, OracleDisagreement) as exc:
        print(f"closuresat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

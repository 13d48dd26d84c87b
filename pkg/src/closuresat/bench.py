"""Wall-clock scaling of :func:`solve` over size ladders, with a log-log fit."""

from __future__ import annotations

import random
import statistics
import time
from math import log

from . import kernels
from .cnf import Formula, formula_size
from .solver import solve

DEFAULT_SIZES = (250, 500, 1000, 2000, 4000)
CLAIMED_EXPONENT = 4

# x1..x3 parity block: satisfiable, yet no literal in it is redundant
_PARITY = ((1, 2, 3), (-1, -2, 3), (1, -2, -3), (-1, 2, -3))
# the worked example; x2 is redundant and its closure covers the whole block
_EXAMPLE = ((1, -2, -3), (2, 3, -4), (-3, 4), (-1, -4), (4,))


def random_3cnf(size: int, seed: int, rep: int = 0, ratio: float = 4.26) -> Formula:
    """Uniform random 3-CNF with about ``size`` symbols (4 per clause)."""
    rng = random.Random(f"bench:{seed}:{size}:{rep}")
    m = max(1, size // 4)
    n = max(3, round(m / ratio))
    return Formula(
        [v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), 3)] for _ in range(m)
    )


def _shift(block, offset):
    return [[l + offset if l > 0 else l - offset for l in c] for c in block]


def layered(size: int, seed: int = 0, rep: int = 0) -> Formula:
    """Parity blocks on the low variables, example copies above them.

    Each solve step removes one example copy but first scans every parity
    literal, so the step count and the scan width both grow with ``size``.
    """
    k = max(1, round(size / 32))
    clauses = []
    for i in range(k):
        clauses += _shift(_PARITY, 3 * i)
    base = 3 * k
    for i in range(k):
        clauses += _shift(_EXAMPLE, base + 4 * i)
    return Formula(clauses)


FAMILIES = {"random": random_3cnf, "layered": layered}


def loglog_slope(sizes, times) -> float | None:
    pts = [(log(s), log(t)) for s, t in zip(sizes, times) if s > 0 and t > 0]
    if len(pts) < 2:
        return None
    xs, ys = zip(*pts)
    return statistics.linear_regression(xs, ys).slope


def run_bench(
    sizes=DEFAULT_SIZES,
    reps: int = 3,
    seed: int = 0,
    family: str = "random",
    backend: str = "auto",
) -> dict:
    make = FAMILIES[family]
    previous = kernels.use(backend)
    try:
        name = kernels.BACKEND
        points = []
        for target in sizes:
            times, verdicts, steps, measured = [], [], [], []
            for rep in range(reps):
                f = make(target, seed, rep)
                t0 = time.perf_counter()
                out = solve(f)
                times.append(time.perf_counter() - t0)
                verdicts.append(out.verdict)
                steps.append(len(out.trace))
                measured.append(formula_size(f))
            points.append(
                {
                    "target_size": target,
                    "formula_size": statistics.median(measured),
                    "median_seconds": statistics.median(times),
                    "seconds": times,
                    "steps": steps,
                    "verdicts": verdicts,
                }
            )
    finally:
        kernels.use(previous)
    slope = loglog_slope(
        [p["formula_size"] for p in points], [p["median_seconds"] for p in points]
    )
    return {
        "family": family,
        "backend": name,
        "seed": seed,
        "reps": reps,
        "points": points,
        "loglog_slope": slope,
        "claimed_exponent": CLAIMED_EXPONENT,
        "note": "claimed bound O(|F|^4) shown for comparison only; not asserted",
    }


def format_bench(report: dict) -> str:
    lines = [f"family={report['family']} backend={report['backend']} reps={report['reps']}"]
    lines.append(f"{'size':>8} {'median s':>12} {'steps':>8}")
    for p in report["points"]:
        lines.append(
            f"{p['formula_size']:>8} {p['median_seconds']:>12.6f} {max(p['steps']):>8}"
        )
    slope = report["loglog_slope"]
    lines.append(
        "log-log slope: "
        + ("n/a" if slope is None else f"{slope:.2f}")
        + f" (claimed bound exponent {report['claimed_exponent']})"
    )
    return "\n".join(lines)

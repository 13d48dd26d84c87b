"""Differential testing of the reduction solver against the oracles.

Instances come from a seeded generator or an exhaustive enumerator. Each one
is classified; every disagreement is shrunk to a 1-minimal formula that keeps
its classification. Reports are plain dicts aggregated by instance index, so
they do not depend on how many worker processes ran them.
"""

from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, islice
from typing import Callable, Iterable, Iterator, Optional

from .closure import is_reduced
from .cnf import (
    Formula,
    check_assignment,
    clause_key,
    emit_dimacs,
    is_consistent,
    literal,
    parse_dimacs,
)
from .oracle import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_VAR_CAP,
    CapacityError,
    OracleTimeout,
    OracleVerdict,
    decide,
)
from .probe import CLAIMS, DEFAULT_PROBE_VAR_BOUND, probe_reduced_preservation
from .solver import SolveOutcome, solve

DIFF_KINDS = ("agreement", "false_yes", "false_no", "unsound_witness", "assignment_conflict")
PROBE_KINDS = ("lemma2_violation", "probe_violation")
KINDS = DIFF_KINDS + PROBE_KINDS
MAX_ENUMERATION = 2_000_000


class ParameterError(ValueError):
    pass


class ContractError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    n_vars: tuple = (3, 8)
    n_clauses: tuple = (1, 20)
    clause_width: tuple = (1, 3)
    allow_tautologies: bool = False
    allow_empty_clause: bool = False

    def __post_init__(self):
        for name in ("n_vars", "n_clauses", "clause_width"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 0:
                raise ParameterError(f"{name} range {lo}..{hi} is empty or negative")
            object.__setattr__(self, name, (int(lo), int(hi)))
        if self.n_vars[0] < 1:
            raise ParameterError("n_vars must be at least 1")
        if self.clause_width[0] == 0 and not self.allow_empty_clause:
            raise ParameterError("width 0 needs allow_empty_clause")
        room = self.n_vars[0] * (2 if self.allow_tautologies else 1)
        if self.clause_width[1] > room:
            raise ParameterError(
                f"width {self.clause_width[1]} cannot be drawn from {self.n_vars[0]} variables"
            )

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("n_vars", "n_clauses", "clause_width"):
            d[k] = list(d[k])
        return d


def random_formula(p: GenParams, index: int) -> Formula:
    """Deterministic in ``(p, index)``; independent of any other draw."""
    rng = random.Random(f"closuresat:{p.seed}:{index}")
    n = rng.randint(*p.n_vars)
    m = rng.randint(*p.n_clauses)
    clauses = []
    for _ in range(m):
        w = rng.randint(*p.clause_width)
        if p.allow_tautologies:
            pool = [l for v in range(1, n + 1) for l in (v, -v)]
            clauses.append(rng.sample(pool, w))
        else:
            clauses.append([literal(v, rng.randint(0, 1)) for v in rng.sample(range(1, n + 1), w)])
    return Formula(clauses)


def clause_universe(n_vars: int, max_width: int, allow_tautologies: bool = False) -> list:
    """Nonempty clauses over variables 1..n_vars, ordered by (width, literals)."""
    lits = [l for v in range(1, n_vars + 1) for l in (-v, v)]
    out = []
    for w in range(1, max_width + 1):
        for combo in combinations(lits, w):
            c = frozenset(combo)
            if allow_tautologies or len({abs(l) for l in c}) == w:
                out.append(c)
    return sorted(out, key=lambda c: (len(c), clause_key(c)))


def count_small(n_vars: int, max_clauses: int, max_width: int, allow_tautologies: bool = False) -> int:
    u = len(clause_universe(n_vars, max_width, allow_tautologies))
    return sum(math.comb(u, k) for k in range(max_clauses + 1))


def enumerate_small(
    n_vars: int, max_clauses: int, max_width: int, allow_tautologies: bool = False
) -> Iterator[Formula]:
    """Every formula of at most ``max_clauses`` distinct clauses, each once.

    Order: by clause count, then lexicographically by positions in
    :func:`clause_universe`; the empty formula comes first.
    """
    if n_vars > 4:
        raise CapacityError(f"enumeration is limited to 4 variables, got {n_vars}")
    total = count_small(n_vars, max_clauses, max_width, allow_tautologies)
    if total > MAX_ENUMERATION:
        raise CapacityError(f"{total} formulas exceeds the enumeration limit {MAX_ENUMERATION}")
    universe = clause_universe(n_vars, max_width, allow_tautologies)
    for k in range(max_clauses + 1):
        for combo in combinations(universe, k):
            yield Formula(combo)


@dataclass
class Finding:
    kind: str
    formula: Formula
    solver: Optional[SolveOutcome]
    oracle: Optional[OracleVerdict]
    shrunk: Optional[Formula] = None
    reproduction: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "formula": emit_dimacs(self.formula),
            "shrunk": None if self.shrunk is None else emit_dimacs(self.shrunk),
            "solver": None if self.solver is None else self.solver.to_json(trace=False),
            "oracle": None if self.oracle is None else self.oracle.to_json(),
            "reproduction": self.reproduction,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Inconclusive:
    formula: Formula
    reason: str


@dataclass(frozen=True)
class CheckConfig:
    oracle: str = "auto"
    order: str = "forward"
    var_cap: int = DEFAULT_VAR_CAP
    node_budget: int = DEFAULT_NODE_BUDGET
    probe_var_bound: int = DEFAULT_PROBE_VAR_BOUND
    drop_tautologies: bool = False


def classify(f: Formula, outcome: SolveOutcome, verdict: OracleVerdict) -> str:
    if outcome.conflicts or not is_consistent(outcome.assignment):
        return "assignment_conflict"
    if outcome.sat:
        if not check_assignment(f, outcome.assignment):
            return "unsound_witness"
        if not verdict.sat:
            return "false_yes"
        return "agreement"
    return "false_no" if verdict.sat else "agreement"


def _oracle(f: Formula, cfg: CheckConfig) -> OracleVerdict:
    return decide(f, cfg.oracle, cfg.var_cap, cfg.node_budget)


def check_kind(f: Formula, cfg: CheckConfig = CheckConfig()) -> Optional[str]:
    """Classification of ``f``, or None when the oracle cannot decide it."""
    try:
        verdict = _oracle(f, cfg)
    except (CapacityError, OracleTimeout):
        return None
    return classify(f, solve(f, cfg.order), verdict)


def shrink(f: Formula, predicate: Callable[[Formula], bool]) -> Formula:
    """Greedy 1-minimization: drop whole clauses, then single literals, to a fixpoint.

    A clause never loses its last literal; dropping the clause covers that
    case, and emptying it would collapse every unsatisfiable input to the
    empty clause.
    """
    if not predicate(f):
        raise ContractError("predicate does not hold on the input formula")
    current = f
    while True:
        nxt = next((g for g in _clause_removals(current) if predicate(g)), None)
        if nxt is None:
            nxt = next((g for g in _literal_removals(current) if predicate(g)), None)
        if nxt is None:
            return current
        current = nxt


def _clause_removals(f: Formula) -> Iterator[Formula]:
    for c in f.ordered_clauses():
        yield f.without([c])


def _literal_removals(f: Formula) -> Iterator[Formula]:
    for c in f.ordered_clauses():
        if len(c) < 2:
            continue
        for l in sorted(c, key=lambda l: (abs(l), l > 0)):
            yield Formula((f.clauses - {c}) | {c - {l}})


def is_one_minimal(f: Formula, predicate: Callable[[Formula], bool]) -> bool:
    return not any(predicate(g) for g in _clause_removals(f)) and not any(
        predicate(g) for g in _literal_removals(f)
    )


def differential_check(
    f: Formula, cfg: CheckConfig = CheckConfig(), do_shrink: bool = True
) -> Finding | Inconclusive:
    try:
        verdict = _oracle(f, cfg)
    except (CapacityError, OracleTimeout) as exc:
        return Inconclusive(f, str(exc))
    outcome = solve(f, cfg.order)
    kind = classify(f, outcome, verdict)
    finding = Finding(kind, f, outcome, verdict)
    if kind != "agreement" and do_shrink:
        finding.shrunk = shrink(f, lambda g: check_kind(g, cfg) == kind)
    return finding


def lemma2_predicate(cfg: CheckConfig) -> Callable[[Formula], bool]:
    """Reduced, nonempty and satisfiable."""

    def pred(g: Formula) -> bool:
        if not len(g) or not is_reduced(g):
            return False
        try:
            return _oracle(g, cfg).sat
        except (CapacityError, OracleTimeout):
            return False

    return pred


def probe_predicate(pivot: int, claims: tuple, cfg: CheckConfig) -> Callable[[Formula], bool]:
    """The pivot still occurs and the probe fails exactly the same claims."""

    def pred(g: Formula) -> bool:
        if pivot not in g.variables():
            return False
        report = probe_reduced_preservation(
            g, pivot, cfg.probe_var_bound, cfg.drop_tautologies
        )
        return report.skipped is None and report.claims_violated == claims

    return pred


def probe_check(f: Formula, cfg: CheckConfig = CheckConfig(), do_shrink: bool = True) -> tuple[list, dict]:
    """Run the resolution probe on every variable of ``f``.

    Returns ``(findings, stats)``; findings are lemma2/probe violations.
    """
    stats = {"probes": 0, "skipped": 0, "collisions": 0, "reduced_inputs": 0}
    stats.update({f"claim_{c}": 0 for c in CLAIMS})
    findings = []
    reduced = is_reduced(f)
    if reduced:
        stats["reduced_inputs"] = 1
    if reduced and len(f):
        try:
            verdict = _oracle(f, cfg)
        except (CapacityError, OracleTimeout):
            verdict = None
        if verdict is not None and verdict.sat:
            fnd = Finding("lemma2_violation", f, solve(f, cfg.order), verdict)
            if do_shrink:
                fnd.shrunk = shrink(f, lemma2_predicate(cfg))
            findings.append(fnd)
    for x in sorted(f.variables()):
        report = probe_reduced_preservation(
            f, x, cfg.probe_var_bound, cfg.drop_tautologies, input_reduced=reduced
        )
        stats["probes"] += 1
        stats["collisions"] += report.collisions
        if report.skipped:
            stats["skipped"] += 1
            continue
        for c in report.claims_violated:
            stats[f"claim_{c}"] += 1
        if report.claims_violated:
            fnd = Finding(
                "probe_violation",
                f,
                None,
                report.g_oracle,
                detail={"pivot": x, "claims": list(report.claims_violated)},
            )
            if do_shrink:
                fnd.shrunk = shrink(f, probe_predicate(x, report.claims_violated, cfg))
            findings.append(fnd)
    return findings, stats


def finding_predicate(finding: dict, cfg: CheckConfig) -> Callable[[Formula], bool]:
    """The shrinking predicate matching a finding's JSON record."""
    kind = finding["kind"]
    if kind == "lemma2_violation":
        return lemma2_predicate(cfg)
    if kind == "probe_violation":
        d = finding["detail"]
        return probe_predicate(d["pivot"], tuple(d["claims"]), cfg)
    return lambda g: check_kind(g, cfg) == kind


def _annotate(finding: Finding, index: int, reproduction: dict, cfg: CheckConfig) -> dict:
    out = finding.to_json()
    out["index"] = index
    out["reproduction"] = dict(reproduction, index=index)
    pred = finding_predicate(out, cfg)
    out["revalidated"] = bool(pred(finding.formula) and pred(finding.shrunk))
    out["one_minimal"] = is_one_minimal(finding.shrunk, pred)
    return out


def check_instance(job: tuple) -> dict:
    """Worker entry point: ``(index, clause lists, reproduction, cfg, probe)``."""
    index, clauses, reproduction, cfg, probe = job
    f = Formula(clauses)
    res = {"index": index, "findings": []}
    finding = differential_check(f, cfg)
    if isinstance(finding, Inconclusive):
        res["kind"] = "inconclusive"
        res["reason"] = finding.reason
    else:
        res["kind"] = finding.kind
        if finding.kind != "agreement":
            res["findings"].append(_annotate(finding, index, reproduction, cfg))
    if probe:
        probe_findings, stats = probe_check(f, cfg)
        res["probe"] = stats
        res["findings"].extend(_annotate(p, index, reproduction, cfg) for p in probe_findings)
    return res


def _chunks(jobs: Iterable, size: int) -> Iterator[list]:
    it = iter(jobs)
    while chunk := list(islice(it, size)):
        yield chunk


def _run_chunk(chunk: list) -> list:
    return [check_instance(j) for j in chunk]


def run_campaign(
    instances: Iterable[Formula],
    source: dict,
    cfg: CheckConfig = CheckConfig(),
    probe: bool = False,
    jobs: int = 1,
) -> dict:
    """Check every instance and assemble the report (order-deterministic by index)."""
    jobs_iter = (
        (i, f.to_lists(), source, cfg, probe) for i, f in enumerate(instances)
    )
    if jobs <= 1:
        results = map(check_instance, jobs_iter)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = (
            r for chunk in pool.map(_run_chunk, _chunks(jobs_iter, 64)) for r in chunk
        )
    totals = {k: 0 for k in DIFF_KINDS}
    totals["inconclusive"] = 0
    probe_totals: dict = {}
    findings = []
    inconclusive = []
    n = 0
    try:
        for res in results:
            n += 1
            totals[res["kind"]] += 1
            if res["kind"] == "inconclusive":
                inconclusive.append({"index": res["index"], "reason": res["reason"]})
            if probe:
                for k, v in res["probe"].items():
                    probe_totals[k] = probe_totals.get(k, 0) + v
            findings.extend(res["findings"])
    finally:
        if jobs > 1:
            pool.shutdown()
    for kind in PROBE_KINDS:
        totals[kind] = sum(1 for f in findings if f["kind"] == kind)
    report = {
        "source": source,
        "config": {
            "oracle": cfg.oracle,
            "order": cfg.order,
            "var_cap": cfg.var_cap,
            "node_budget": cfg.node_budget,
            "probe": probe,
            "probe_var_bound": cfg.probe_var_bound,
            "drop_tautologies": cfg.drop_tautologies,
        },
        "instances": n,
        "totals": totals,
        "non_agreement": len(findings),
        "inconclusive": inconclusive,
        "findings": findings,
        "distinct_counterexamples": distinct_counterexamples(findings),
    }
    if probe:
        report["probe_totals"] = probe_totals
    return report


def distinct_counterexamples(findings: list[dict]) -> list[dict]:
    """Group findings by (kind, shrunk formula, pivot); first-seen order."""
    groups: dict = {}
    for f in findings:
        key = (f["kind"], f["shrunk"], json.dumps(f["detail"], sort_keys=True))
        g = groups.setdefault(
            key,
            {"kind": f["kind"], "shrunk": f["shrunk"], "detail": f["detail"], "instances": []},
        )
        g["instances"].append(f["index"])
    return list(groups.values())


def fuzz_campaign(
    params: GenParams, instances: int, cfg: CheckConfig = CheckConfig(), probe: bool = False, jobs: int = 1
) -> dict:
    source = {"source": "fuzz", "params": params.to_json()}
    formulas = (random_formula(params, i) for i in range(instances))
    return run_campaign(formulas, source, cfg, probe, jobs)


def enumerate_campaign(
    n_vars: int,
    max_clauses: int,
    max_width: int,
    cfg: CheckConfig = CheckConfig(),
    probe: bool = False,
    jobs: int = 1,
    allow_tautologies: bool = False,
) -> dict:
    source = {
        "source": "enumerate",
        "n_vars": n_vars,
        "max_clauses": max_clauses,
        "max_width": max_width,
        "allow_tautologies": allow_tautologies,
    }
    formulas = enumerate_small(n_vars, max_clauses, max_width, allow_tautologies)
    return run_campaign(formulas, source, cfg, probe, jobs)


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_bundles(report: dict, out_dir: str) -> list[str]:
    """One ``.cnf`` + ``.json`` pair per distinct counterexample; returns the .cnf paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for n, group in enumerate(report["distinct_counterexamples"]):
        stem = os.path.join(out_dir, f"{n:04d}-{group['kind']}")
        with open(stem + ".cnf", "w") as fh:
            fh.write(group["shrunk"])
        shrunk = parse_dimacs(group["shrunk"])
        sidecar = {
            "kind": group["kind"],
            "detail": group["detail"],
            "instances": group["instances"],
            "solver": solve(shrunk).to_json(),
            "oracle": decide(shrunk).to_json(),
            "source": report["source"],
        }
        with open(stem + ".json", "w") as fh:
            fh.write(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
        paths.append(stem + ".cnf")
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        fh.write(dump_report(report))
    return paths


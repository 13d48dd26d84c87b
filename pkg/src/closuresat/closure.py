"""Staged literal closure, covered clauses and the redundancy test."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Optional

from . import kernels
from .cnf import Formula, sorted_literals, clause_str


@dataclass(frozen=True)
class Compact:
    """Index-based view of a formula consumed by the kernels."""

    clauses: tuple
    lits: tuple
    index: dict
    cl_start: array
    cl_lits: array
    occ_start: array
    occ_cls: array

    @property
    def n_lits(self) -> int:
        return len(self.lits)

    def args(self):
        return self.cl_start, self.cl_lits, self.occ_start, self.occ_cls, self.n_lits


def compact(f: Formula) -> Compact:
    if f._compact is not None:
        return f._compact
    lits = []
    for v in sorted(f.variables()):
        lits += [v, -v]
    index = {l: i for i, l in enumerate(lits)}
    clauses = f.ordered_clauses()
    cl_start, cl_lits = array("i", [0]), array("i")
    occ: list[list[int]] = [[] for _ in lits]
    for ci, c in enumerate(clauses):
        for l in c:
            cl_lits.append(index[l])
            occ[index[l]].append(ci)
        cl_start.append(len(cl_lits))
    occ_start, occ_cls = array("i", [0]), array("i")
    for row in occ:
        occ_cls.extend(row)
        occ_start.append(len(occ_cls))
    f._compact = Compact(clauses, tuple(lits), index, cl_start, cl_lits, occ_start, occ_cls)
    return f._compact


@dataclass(frozen=True)
class ClosureResult:
    seed: int
    stages: tuple  # S^0 ⊆ S^1 ⊆ ...; the last entry repeats to witness the fixpoint
    closure: frozenset
    covered: frozenset

    def growing_stages(self) -> tuple:
        """Stages without the trailing fixpoint repetition."""
        return self.stages[:-1]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "stages": [sorted_literals(s) for s in self.growing_stages()],
            "closure": sorted_literals(self.closure),
            "covered": sorted(clause_str(c) for c in self.covered),
        }


def clauses_containing(f: Formula, lits: Iterable[int]) -> frozenset:
    """Clauses of ``f`` that contain a literal from ``lits``."""
    out: set = set()
    for l in lits:
        out |= f.occurrence(l)
    return frozenset(out)


def extension(f: Formula, s: Iterable[int], z: int) -> frozenset:
    """Literals u != -z whose clauses escape [s] while all clauses of -u lie in it."""
    covered = clauses_containing(f, s)
    return frozenset(
        u
        for u in f.literals()
        if u != -z
        and not f.occurrence(u) <= covered
        and f.occurrence(-u) <= covered
    )


def closure(f: Formula, z: int) -> ClosureResult:
    cf = compact(f)
    seed = cf.index.get(z, -1)
    added, covered_idx = kernels.active.closure_stages(*cf.args(), seed)
    stage = frozenset([z])
    stages = [stage]
    for new in added:
        stage = stage | {cf.lits[i] for i in new}
        stages.append(stage)
    stages.append(stage)
    covered = frozenset(cf.clauses[i] for i in covered_idx)
    return ClosureResult(z, tuple(stages), stage, covered)


def closure_by_definition(f: Formula, z: int) -> ClosureResult:
    """Same result as :func:`closure`, iterating :func:`extension` on sets."""
    stages = [frozenset([z])]
    while True:
        nxt = stages[-1] | extension(f, stages[-1], z)
        stages.append(nxt)
        if nxt == stages[-2]:
            break
    return ClosureResult(z, tuple(stages), stages[-1], clauses_containing(f, stages[-1]))


def is_redundant(f: Formula, z: int) -> bool:
    return f.occurrence(-z) <= closure(f, z).covered


def scan_order(f: Formula, order: str = "forward") -> list[int]:
    """Occurring literals by ascending variable, positive first (or reversed)."""
    lits = sorted(f.literals(), key=lambda l: (abs(l), l < 0))
    if order == "reverse":
        lits.reverse()
    elif order != "forward":
        raise ValueError(f"order must be 'forward' or 'reverse', got {order!r}")
    return lits


def find_redundant(f: Formula, order: str = "forward") -> Optional[tuple[int, ClosureResult]]:
    """First redundant literal in scan order with its closure, or None if reduced."""
    cf = compact(f)
    seeds = array("i", [cf.index[l] for l in scan_order(f, order)])
    hit = kernels.active.first_redundant(*cf.args(), seeds)
    if hit < 0:
        return None
    z = cf.lits[hit]
    return z, closure(f, z)


def is_reduced(f: Formula) -> bool:
    return find_redundant(f) is None


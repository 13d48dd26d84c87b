"""The reduction solver: strip the covered clauses of redundant literals until none remain.

The answer is "yes" exactly when no clause survives. Nothing here checks the
answer; the differential harness does that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closure import closure, find_redundant
from .cnf import Formula, clause_str, formula_size, sorted_literals, variable_count


@dataclass(frozen=True)
class ReductionStep:
    chosen: int
    closure_literals: frozenset
    removed: frozenset
    remaining_size: int

    def to_json(self) -> dict:
        return {
            "chosen": self.chosen,
            "closure_literals": sorted_literals(self.closure_literals),
            "removed": sorted(clause_str(c) for c in self.removed),
            "remaining_size": self.remaining_size,
        }


@dataclass(frozen=True)
class Conflict:
    """A literal whose complement was already in the accumulated assignment."""

    step: int
    literal: int

    def to_json(self) -> dict:
        return {"step": self.step, "literal": self.literal}


@dataclass(frozen=True)
class SolveOutcome:
    sat: bool
    assignment: frozenset
    trace: tuple
    final_formula: Formula
    conflicts: tuple = field(default=())

    @property
    def verdict(self) -> str:
        return "yes" if self.sat else "no"

    def to_json(self, trace: bool = True) -> dict:
        out = {
            "verdict": self.verdict,
            "assignment": sorted_literals(self.assignment),
            "conflicts": [c.to_json() for c in self.conflicts],
            "steps": len(self.trace),
            "residue_clauses": len(self.final_formula),
        }
        if trace:
            out["trace"] = [s.to_json() for s in self.trace]
        return out


def reduce_by(f: Formula, z: int) -> Formula:
    """Drop every clause covered by the closure of ``z``."""
    return f.without(closure(f, z).covered)


def solve(f: Formula, order: str = "forward") -> SolveOutcome:
    assignment: set = set()
    conflicts = []
    trace = []
    current = f
    while True:
        found = find_redundant(current, order)
        if found is None:
            break
        z, cr = found
        step = len(trace)
        for lit in sorted_literals(cr.closure):
            if -lit in assignment:
                conflicts.append(Conflict(step, lit))
        assignment |= cr.closure
        current = current.without(cr.covered)
        trace.append(ReductionStep(z, cr.closure, cr.covered, formula_size(current)))
    return SolveOutcome(
        sat=len(current) == 0,
        assignment=frozenset(assignment),
        trace=tuple(trace),
        final_formula=current,
        conflicts=tuple(conflicts),
    )


__all__ = ["ReductionStep", "SolveOutcome", "reduce_by", "solve", "variable_count"]

"""Resolution on one variable and per-instance checks of the claims made about it.

Claims evaluated by :func:`probe_reduced_preservation`:

* ``A``: a reduced formula has a clause with exactly one polarity of the pivot;
* ``B``: resolving a reduced formula on the pivot yields a reduced formula;
* ``C``: resolving a reduced, nonempty formula yields a nonempty formula;
* ``D``: every satisfying assignment of the input satisfies the resolvent formula;
* ``E``: resolving a reduced formula yields an unsatisfiable formula (the
  conclusion the induction draws for the resolvent formula).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .closure import is_reduced
from .cnf import Formula, emit_dimacs
from .oracle import OracleVerdict, decide

CLAIMS = ("A", "B", "C", "D", "E")
DEFAULT_PROBE_VAR_BOUND = 16


def split_on(f: Formula, x: int) -> tuple[list, list]:
    """Clauses with only the negative / only the positive occurrence of ``x``."""
    neg = [c for c in f.ordered_clauses() if -x in c and x not in c]
    pos = [c for c in f.ordered_clauses() if x in c and -x not in c]
    return neg, pos


def resolvents(f: Formula, x: int, drop_tautologies: bool = False) -> list[frozenset]:
    neg, pos = split_on(f, x)
    out = []
    for c in neg:
        for d in pos:
            r = (c - {-x}) | (d - {x})
            if drop_tautologies and any(-l in r for l in r):
                continue
            out.append(r)
    return out


def resolve_on(f: Formula, x: int, drop_tautologies: bool = False) -> Formula:
    """Replace the one-sided clauses on ``x`` by all their pairwise resolvents.

    Clauses holding both ``x`` and ``-x`` are left alone. Resolvents that are
    tautological on another variable are kept unless ``drop_tautologies``.
    """
    neg, pos = split_on(f, x)
    kept = f.clauses - frozenset(neg) - frozenset(pos)
    return Formula(kept | frozenset(resolvents(f, x, drop_tautologies)))


def _satisfying_masks(f: Formula, vs: list[int]):
    bit = {v: 1 << i for i, v in enumerate(vs)}
    masks = []
    for c in f.clauses:
        masks.append((sum(bit[l] for l in c if l > 0), sum(bit[-l] for l in c if l < 0)))
    full = (1 << len(vs)) - 1
    for k in range(1 << len(vs)):
        if all(k & p or (full ^ k) & n for p, n in masks):
            yield frozenset(v if k & bit[v] else -v for v in vs)


def resolution_sound_on(f: Formula, g: Formula) -> bool:
    """Every total satisfying assignment of ``f`` over vars(f) ∪ vars(g) satisfies ``g``."""
    vs = sorted(f.variables() | g.variables())
    return all(
        all(not c.isdisjoint(t) for c in g.clauses) for t in _satisfying_masks(f, vs)
    )


@dataclass(frozen=True)
class ProbeReport:
    pivot: int
    input_reduced: bool
    input_nonempty: bool
    n0: int
    n1: int
    g: Formula
    g_reduced: bool
    g_oracle: Optional[OracleVerdict]
    claims_violated: tuple
    collisions: int
    skipped: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "pivot": self.pivot,
            "input_reduced": self.input_reduced,
            "input_nonempty": self.input_nonempty,
            "n0": self.n0,
            "n1": self.n1,
            "g": emit_dimacs(self.g),
            "g_reduced": self.g_reduced,
            "g_oracle": None if self.g_oracle is None else self.g_oracle.to_json(),
            "claims_violated": list(self.claims_violated),
            "collisions": self.collisions,
            "skipped": self.skipped,
        }


def probe_reduced_preservation(
    f: Formula,
    x: int,
    var_bound: int = DEFAULT_PROBE_VAR_BOUND,
    drop_tautologies: bool = False,
    input_reduced: Optional[bool] = None,
) -> ProbeReport:
    """Resolve ``f`` on ``x`` and report which claims fail on this instance.

    Claims D and E need truth tables or an oracle call on the resolvent
    formula, so they are skipped (with a reason) above ``var_bound`` variables.
    ``input_reduced`` may be passed in when the caller already knows it.
    """
    if x < 1 or x not in f.variables():
        raise ValueError(f"variable {x} does not occur in the formula")
    neg, pos = split_on(f, x)
    g = resolve_on(f, x, drop_tautologies)
    if input_reduced is None:
        input_reduced = is_reduced(f)
    g_reduced = is_reduced(g)
    survivors = f.clauses - frozenset(neg) - frozenset(pos)
    collisions = sum(1 for r in set(resolvents(f, x, drop_tautologies)) if r in survivors)

    violated = []
    if input_reduced and not neg and not pos:
        violated.append("A")
    if input_reduced and not g_reduced:
        violated.append("B")
    if input_reduced and len(f) and not len(g):
        violated.append("C")
    skipped = None
    g_oracle = None
    n_vars = len(f.variables() | g.variables())
    if n_vars > var_bound:
        skipped = f"{n_vars} variables exceeds probe bound {var_bound}; claims D, E and oracle skipped"
    else:
        g_oracle = decide(g)
        if not resolution_sound_on(f, g):
            violated.append("D")
        if input_reduced and g_oracle.sat:
            violated.append("E")
    return ProbeReport(
        pivot=x,
        input_reduced=input_reduced,
        input_nonempty=bool(len(f)),
        n0=len(neg),
        n1=len(pos),
        g=g,
        g_reduced=g_reduced,
        g_oracle=g_oracle,
        claims_violated=tuple(violated),
        collisions=collisions,
        skipped=skipped,
    )

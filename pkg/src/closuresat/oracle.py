"""Ground-truth satisfiability: truth-table enumeration and a plain DPLL.

Both return an :class:`OracleVerdict` whose witness has already been checked
against the formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cnf import Formula, check_assignment, sorted_literals

DEFAULT_VAR_CAP = 24
DEFAULT_NODE_BUDGET = 1_000_000


class CapacityError(RuntimeError):
    pass


class OracleTimeout(RuntimeError):
    pass


class OracleDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    sat: bool
    witness: Optional[frozenset]
    method: str
    decisions: int

    def to_json(self) -> dict:
        return {
            "sat": self.sat,
            "witness": None if self.witness is None else sorted_literals(self.witness),
            "method": self.method,
            "decisions": self.decisions,
        }


def _verified(f: Formula, witness: frozenset, method: str, decisions: int) -> OracleVerdict:
    if not check_assignment(f, witness):
        raise AssertionError(f"{method} produced a witness that fails the formula")
    return OracleVerdict(True, witness, method, decisions)


def brute_force(f: Formula, var_cap: int = DEFAULT_VAR_CAP) -> OracleVerdict:
    """Try all 2^n assignments to the occurring variables.

    Assignment ``k`` sets the i-th smallest variable true iff bit i of ``k``
    is set; the first satisfying one (smallest ``k``) is the witness.
    """
    vs = sorted(f.variables())
    if len(vs) > var_cap:
        raise CapacityError(f"{len(vs)} variables exceeds the enumeration cap of {var_cap}")
    bit = {v: 1 << i for i, v in enumerate(vs)}
    masks = []
    for c in f.clauses:
        pos = sum(bit[l] for l in c if l > 0)
        neg = sum(bit[-l] for l in c if l < 0)
        if pos & neg:
            continue  # tautology
        masks.append((pos, neg))
    full = (1 << len(vs)) - 1
    for k in range(1 << len(vs)):
        off = full ^ k
        if all(k & pos or off & neg for pos, neg in masks):
            witness = frozenset(v if k & bit[v] else -v for v in vs)
            return _verified(f, witness, "enumeration", k + 1)
    return OracleVerdict(False, None, "enumeration", 1 << len(vs))


def dpll(f: Formula, node_budget: int = DEFAULT_NODE_BUDGET) -> OracleVerdict:
    """Unit propagation, pure-literal elimination, then split on the lowest
    unassigned variable (true branch first)."""
    nodes = 0

    def simplify(clauses, lit):
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
            out.append(c)
        return out

    def search(clauses, assigned):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise OracleTimeout(f"DPLL exceeded {node_budget} search nodes")
        while True:
            if any(not c for c in clauses):
                return None
            unit = next((c for c in clauses if len(c) == 1), None)
            if unit is not None:
                (lit,) = unit
            else:
                present = {l for c in clauses for l in c}
                pure = sorted(l for l in present if -l not in present)
                if not pure:
                    break
                lit = pure[0]
            assigned = assigned | {lit}
            clauses = simplify(clauses, lit)
        if not clauses:
            return assigned
        x = min(abs(l) for c in clauses for l in c)
        for lit in (x, -x):
            found = search(simplify(clauses, lit), assigned | {lit})
            if found is not None:
                return found
        return None

    start = [c for c in f.clauses if not any(-l in c for l in c)]
    found = search(start, frozenset())
    if found is None:
        return OracleVerdict(False, None, "dpll", nodes)
    # variables left open by the search are fixed positive so the witness is total
    witness = frozenset(found) | {v for v in f.variables() if v not in found and -v not in found}
    return _verified(f, witness, "dpll", nodes)


def decide(
    f: Formula,
    method: str = "auto",
    var_cap: int = DEFAULT_VAR_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> OracleVerdict:
    """Dispatch to an oracle.

    ``auto`` enumerates up to ``var_cap`` variables and falls back to DPLL;
    ``both`` runs both and raises :class:`OracleDisagreement` on a mismatch.
    """
    if method == "enum":
        return brute_force(f, var_cap)
    if method == "dpll":
        return dpll(f, node_budget)
    if method == "auto":
        if len(f.variables()) <= var_cap:
            return brute_force(f, var_cap)
        return dpll(f, node_budget)
    if method == "both":
        a = brute_force(f, var_cap)
        b = dpll(f, node_budget)
        if a.sat != b.sat:
            raise OracleDisagreement(f"enumeration says {a.sat}, dpll says {b.sat} on {f!r}")
        return a
    raise ValueError(f"unknown oracle method {method!r}")

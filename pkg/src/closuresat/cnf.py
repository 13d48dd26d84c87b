"""CNF data model: literals, clauses, formulas, assignments and DIMACS I/O.

Literals are nonzero ints in DIMACS encoding: ``v`` is the variable ``x_v``
and ``-v`` its negation. A clause is a ``frozenset`` of literals and a
:class:`Formula` is a set of clauses plus an occurrence index.
"""

from __future__ import annotations

import io
from typing import Iterable, Iterator, TextIO

Clause = frozenset


class ParseError(ValueError):
    """Malformed DIMACS input; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InvalidAssignment(ValueError):
    pass


def literal(var: int, polarity: int) -> int:
    """Build the literal ``x_var^polarity`` (polarity 1 = positive, 0 = negated)."""
    if var < 1:
        raise ValueError(f"variable index must be >= 1, got {var}")
    if polarity not in (0, 1):
        raise ValueError(f"polarity must be 0 or 1, got {polarity}")
    return var if polarity else -var


def negate(lit: int) -> int:
    return -lit


def var_of(lit: int) -> int:
    return abs(lit)


def polarity_of(lit: int) -> int:
    return 1 if lit > 0 else 0


def lit_key(lit: int) -> tuple[int, int]:
    """Canonical literal order: by variable, then polarity (negated first)."""
    return (abs(lit), 1 if lit > 0 else 0)


def scan_key(lit: int) -> tuple[int, int]:
    """Redundancy scan order: by variable, positive polarity first."""
    return (abs(lit), 0 if lit > 0 else 1)


def sorted_literals(lits: Iterable[int]) -> list[int]:
    return sorted(lits, key=lit_key)


def clause_key(clause: Iterable[int]) -> tuple:
    return tuple(lit_key(l) for l in sorted_literals(clause))


def clause_str(clause: Iterable[int]) -> str:
    """Clause as a DIMACS line, e.g. ``"1 -2 0"``."""
    return " ".join(str(l) for l in sorted_literals(clause) + [0])


def _check_literal(lit) -> int:
    if isinstance(lit, bool) or not isinstance(lit, int) or lit == 0:
        raise ValueError(f"literal must be a nonzero int, got {lit!r}")
    return lit


class Formula:
    """An immutable set of clauses with a literal -> clauses occurrence index.

    Clauses are deduplicated as literal sets. Tautological and empty clauses
    are kept as given.
    """

    __slots__ = ("clauses", "_occ", "_ordered", "_compact")

    def __init__(self, clauses: Iterable[Iterable[int]] = ()):
        cs = frozenset(frozenset(_check_literal(l) for l in c) for c in clauses)
        occ: dict[int, set] = {}
        for c in cs:
            for l in c:
                occ.setdefault(l, set()).add(c)
        self.clauses: frozenset = cs
        self._occ = {l: frozenset(s) for l, s in occ.items()}
        self._ordered = None
        self._compact = None

    def occurrence(self, lit: int) -> frozenset:
        """Clauses of the formula that contain ``lit``."""
        return self._occ.get(lit, frozenset())

    def literals(self) -> frozenset:
        """Literals occurring in some clause."""
        return frozenset(self._occ)

    def variables(self) -> frozenset:
        return frozenset(abs(l) for l in self._occ)

    def ordered_clauses(self) -> tuple:
        """Clauses in canonical order (by their sorted literal sequences)."""
        if self._ordered is None:
            self._ordered = tuple(sorted(self.clauses, key=clause_key))
        return self._ordered

    def without(self, removed: Iterable[frozenset]) -> "Formula":
        return Formula(self.clauses - frozenset(removed))

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.ordered_clauses())

    def __contains__(self, clause) -> bool:
        return frozenset(clause) in self.clauses

    def __eq__(self, other) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self.clauses == other.clauses

    def __hash__(self) -> int:
        return hash(self.clauses)

    def __repr__(self) -> str:
        body = ", ".join("{" + ", ".join(map(str, sorted_literals(c))) + "}" for c in self)
        return f"Formula({{{body}}})"

    def to_lists(self) -> list[list[int]]:
        return [sorted_literals(c) for c in self.ordered_clauses()]


def formula_size(f: Formula) -> int:
    """Literal occurrences plus clause count; stands in for the symbol count."""
    return sum(len(c) for c in f.clauses) + len(f.clauses)


def variable_count(f: Formula) -> int:
    return len(f.variables())


def is_consistent(lits: Iterable[int]) -> bool:
    s = set(lits)
    return not any(-l in s for l in s)


def complementary_pairs(lits: Iterable[int]) -> list[int]:
    """Variables that appear in both polarities, ascending."""
    s = set(lits)
    return sorted({abs(l) for l in s if -l in s})


def check_assignment(f: Formula, assignment: Iterable[int]) -> bool:
    """True iff every clause of ``f`` contains a literal of ``assignment``."""
    t = frozenset(assignment)
    clash = complementary_pairs(t)
    if clash:
        raise InvalidAssignment(f"assignment holds both polarities of variables {clash}")
    return all(not c.isdisjoint(t) for c in f.clauses)


def parse_dimacs(source: str | TextIO) -> Formula:
    """Parse DIMACS CNF text (a string or a text stream)."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = None
    clauses = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(stream, 1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if nv < 0 or nc < 0:
                raise ParseError(f"negative count in header {line!r}", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"non-integer token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(
                    f"variable {abs(lit)} exceeds header bound {header[0]}", lineno
                )
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", max(last_line, 1))
    if current:
        raise ParseError("last clause is not terminated by 0", last_line)
    return Formula(clauses)


def emit_dimacs(f: Formula) -> str:
    """Canonical DIMACS text; header counts reflect the deduplicated formula."""
    max_var = max(f.variables(), default=0)
    lines = [f"p cnf {max_var} {len(f)}"]
    lines.extend(clause_str(c) for c in f.ordered_clauses())
    return "\n".join(lines) + "\n"


def read_formula(path: str) -> Formula:
    """Read a DIMACS file; ``"-"`` reads standard input."""
    if path == "-":
        import sys

        return parse_dimacs(sys.stdin)
    with open(path) as fh:
        return parse_dimacs(fh)

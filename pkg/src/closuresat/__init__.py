"""Closure-based redundant-literal reduction for CNF formulas, with oracles
and a differential testing harness."""

from .cnf import (
    Formula,
    InvalidAssignment,
    ParseError,
    check_assignment,
    emit_dimacs,
    formula_size,
    literal,
    negate,
    parse_dimacs,
    variable_count,
)
from .closure import (
    ClosureResult,
    clauses_containing,
    closure,
    extension,
    find_redundant,
    is_redundant,
)
from .kernels import BACKEND
from .oracle import OracleVerdict, brute_force, dpll
from .probe import ProbeReport, probe_reduced_preservation, resolve_on
from .solver import ReductionStep, SolveOutcome, reduce_by, solve

__version__ = "0.1.0"

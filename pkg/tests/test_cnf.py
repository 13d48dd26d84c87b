import io

import pytest
from hypothesis import given

from closuresat.cnf import (
    Formula,
    InvalidAssignment,
    ParseError,
    check_assignment,
    emit_dimacs,
    formula_size,
    literal,
    negate,
    parse_dimacs,
    polarity_of,
    var_of,
    variable_count,
)
from conftest import FP_CLAUSES, FP_TEXT, formulas


def test_literal_encoding():
    assert literal(1, 1) == 1
    assert literal(1, 0) == -1
    assert var_of(-7) == 7 and polarity_of(-7) == 0 and polarity_of(7) == 1
    with pytest.raises(ValueError):
        literal(0, 1)
    with pytest.raises(ValueError):
        literal(3, 2)


@pytest.mark.parametrize("lit,expected", [(1, -1), (-1, 1)])
def test_negate(lit, expected):
    assert negate(lit) == expected


def test_negate_involution():
    assert negate(negate(-7)) == -7


def test_parse_simple():
    f = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0")
    assert f == Formula([[1, -2], [-1, 2]])


def test_parse_collapses_duplicates():
    f = parse_dimacs("p cnf 1 2\n1 0\n1 0")
    assert len(f) == 1 and f == Formula([[1]])
    assert parse_dimacs("p cnf 2 1\n1 1 -2 0") == Formula([[1, -2]])


def test_parse_paper_example(fp):
    assert fp.clauses == frozenset(frozenset(c) for c in FP_CLAUSES)


def test_parse_comments_spanning_lines_and_empty_clause():
    f = parse_dimacs("c hello\np cnf 3 2\n1 2\n 3 0\n0\n")
    assert f == Formula([[1, 2, 3], []])


def test_parse_stream():
    assert parse_dimacs(io.StringIO(FP_TEXT)) == parse_dimacs(FP_TEXT)


@pytest.mark.parametrize(
    "text,line",
    [
        ("p cnf x 1\n1 0", 1),
        ("p dnf 1 1\n1 0", 1),
        ("p cnf 2 1\n1 a 0", 2),
        ("p cnf 2 1\n1 3 0", 2),
        ("p cnf 2 1\n1 2", 2),
        ("1 2 0", 1),
        ("c only a comment\n", 1),
        ("p cnf 2 1\np cnf 2 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs(text)
    assert exc.value.lineno == line


def test_emit_examples():
    assert emit_dimacs(Formula([[1]])) == "p cnf 1 1\n1 0\n"
    assert emit_dimacs(Formula()) == "p cnf 0 0\n"


def test_emit_canonical_order():
    f = Formula([[3, -1], [2], [-1, 1], [1]])
    assert emit_dimacs(f) == "p cnf 3 4\n-1 1 0\n-1 3 0\n1 0\n2 0\n"


def test_paper_example_round_trip(fp):
    assert parse_dimacs(emit_dimacs(parse_dimacs(FP_TEXT))) == fp


@given(formulas())
def test_round_trip_property(f):
    text = emit_dimacs(f)
    assert parse_dimacs(text) == f
    assert emit_dimacs(parse_dimacs(text)) == text


@given(formulas())
def test_occurrence_index_consistent(f):
    lits = {l for c in f.clauses for l in c} | {-l for c in f.clauses for l in c}
    for l in lits:
        assert f.occurrence(l) == frozenset(c for c in f.clauses if l in c)
    assert f.literals() == frozenset(l for c in f.clauses for l in c)


def test_formula_size(fp):
    assert formula_size(Formula()) == 0
    assert formula_size(Formula([[1, -2]])) == 3
    # 3 + 3 + 2 + 2 + 1 literal occurrences, 5 clauses
    assert formula_size(fp) == 16


@given(formulas())
def test_formula_size_bounds_distinct_literals(f):
    assert formula_size(f) >= len(f.literals())


def test_check_assignment(fp):
    assert check_assignment(fp, {-1, 2, -3, 4})
    assert not check_assignment(fp, {1})
    assert check_assignment(Formula(), set())
    assert not check_assignment(Formula([[]]), {1})
    with pytest.raises(InvalidAssignment):
        check_assignment(fp, {1, -1})


@given(formulas(max_var=4), formulas(max_var=4))
def test_check_assignment_monotone(f, g):
    # any consistent literal set drawn from g's clauses serves as T
    t = {}
    for c in g.ordered_clauses():
        for l in sorted(c):
            t.setdefault(abs(l), l)
    t = set(t.values())
    if check_assignment(f, set()):
        assert check_assignment(f, t)
    if check_assignment(f, t):
        extra = {v for v in range(1, 5) if v not in t and -v not in t}
        assert check_assignment(f, t | extra)


def test_variable_count(fp):
    assert variable_count(fp) == 4
    assert variable_count(Formula()) == 0
    assert variable_count(Formula([[7, -7]])) == 1


def test_formula_rejects_bad_literals():
    with pytest.raises(ValueError):
        Formula([[0]])
    with pytest.raises(ValueError):
        Formula([[True]])

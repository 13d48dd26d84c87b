import pytest
from hypothesis import strategies as st

from closuresat import kernels
from closuresat.cnf import Formula, parse_dimacs

FP_TEXT = "p cnf 4 5\n1 -2 -3 0\n2 3 -4 0\n-3 4 0\n-1 -4 0\n4 0"
FP_CLAUSES = [{1, -2, -3}, {2, 3, -4}, {-3, 4}, {-1, -4}, {4}]
PARITY = [[1, 2, 3], [-1, -2, 3], [1, -2, -3], [-1, 2, -3]]


@pytest.fixture
def fp():
    return parse_dimacs(FP_TEXT)


@pytest.fixture(params=kernels.available())
def backend(request):
    previous = kernels.use(request.param)
    yield request.param
    kernels.use(previous)


def formulas(max_var=6, max_clauses=12, max_width=4, tautologies=True, empty=True):
    lit = st.integers(1, max_var).flatmap(lambda v: st.sampled_from([v, -v]))
    clause = st.frozensets(lit, min_size=0 if empty else 1, max_size=max_width)
    if not tautologies:
        clause = clause.filter(lambda c: not any(-l in c for l in c))
    return st.lists(clause, max_size=max_clauses).map(Formula)


_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None or (report.when != "call" and report.passed):
        return
    n, title = marker
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    if _CRITERIA.get(n, (None, "PASS"))[1] != "FAIL":
        _CRITERIA[n] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result()._criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")

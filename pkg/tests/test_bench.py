import subprocess
import sys
from pathlib import Path

from closuresat import kernels
from closuresat.bench import layered, loglog_slope, random_3cnf, run_bench
from closuresat.cnf import formula_size
from closuresat.solver import solve

ROOT = Path(__file__).resolve().parents[1]


def test_families_hit_target_size():
    for size in (250, 1000):
        assert abs(formula_size(random_3cnf(size, 0)) - size) <= 0.1 * size
        assert abs(formula_size(layered(size)) - size) <= 0.1 * size


def test_layered_needs_one_step_per_example_copy():
    f = layered(320)
    out = solve(f)
    assert not out.sat and len(out.trace) == 10
    assert len(out.final_formula) == 40  # the parity blocks survive


def test_loglog_slope():
    assert abs(loglog_slope([1, 2, 4], [1, 4, 16]) - 2) < 1e-9
    assert loglog_slope([1], [1]) is None


def test_run_bench_restores_backend():
    before = kernels.BACKEND
    rep = run_bench(sizes=(64, 128), reps=1, family="layered", backend="python")
    assert rep["backend"] == "python" and kernels.BACKEND == before


def test_backend_comparison_script():
    proc = subprocess.run(
        [sys.executable, str(ROOT / "benchmarks" / "bench_backends.py"), "--sizes", "64,128", "--reps", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "log-log slope" in proc.stdout

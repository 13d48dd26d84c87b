"""Acceptance criteria 1-7, each at its stated tolerance."""

import json
import statistics
import time

import pytest

from closuresat import bench, kernels
from closuresat.closure import clauses_containing, closure, extension, is_reduced
from closuresat.cnf import Formula, check_assignment, parse_dimacs
from closuresat.harness import (
    CheckConfig,
    GenParams,
    dump_report,
    enumerate_campaign,
    enumerate_small,
    finding_predicate,
    is_one_minimal,
    random_formula,
    write_bundles,
)
from closuresat.oracle import brute_force, dpll
from closuresat.probe import probe_reduced_preservation
from closuresat.solver import solve
from conftest import FP_CLAUSES, FP_TEXT

ENUM = (3, 4, 3)
CFG = CheckConfig()


@pytest.fixture(scope="module")
def enumerated():
    return list(enumerate_small(*ENUM))


@pytest.fixture(scope="module")
def diff_report():
    return enumerate_campaign(*ENUM, CFG, probe=False, jobs=1)


@pytest.fixture(scope="module")
def probe_report():
    return enumerate_campaign(*ENUM, CFG, probe=True, jobs=1)


@pytest.mark.criterion(1, "closure golden test on the worked example, < 1 ms")
def test_c1_paper_golden():
    fp = parse_dimacs(FP_TEXT)
    r = closure(fp, 1)
    assert r.closure == {1, 2, -3}
    assert r.covered == {frozenset(c) for c in FP_CLAUSES[:3]}
    times = []
    for _ in range(50):
        f = parse_dimacs(FP_TEXT)
        t0 = time.perf_counter()
        closure(f, 1)
        times.append(time.perf_counter() - t0)
    median = statistics.median(times)
    print(f"closure(example, x1) median {median * 1e6:.1f} us ({kernels.BACKEND})")
    assert median < 1e-3


@pytest.mark.criterion(2, "definitional invariants on 10,000 random formulas, < 60 s")
def test_c2_invariants():
    p = GenParams(seed=20240601, n_vars=(5, 20), n_clauses=(0, 60), clause_width=(0, 5),
                  allow_tautologies=True, allow_empty_clause=True)
    violations = []
    t0 = time.perf_counter()
    closures = 0
    for i in range(10_000):
        f = random_formula(p, i)
        lits = f.literals()
        both = lits | {-l for l in lits}
        for l in both:
            if f.occurrence(l) != frozenset(c for c in f.clauses if l in c):
                violations.append((i, "occurrence", l))
        for z in sorted(lits, key=lambda l: (abs(l), l < 0)) + [99]:
            r = closure(f, z)
            closures += 1
            s = r.closure
            checks = {
                "seed": r.stages[0] == {z} and z in s and f.occurrence(z) <= r.covered,
                "monotone": all(a < b for a, b in zip(r.stages[:-2], r.stages[1:-1])),
                "fixpoint": r.stages[-1] == r.stages[-2] == s and not extension(f, s, z),
                "covered": r.covered == clauses_containing(f, s),
                "stage_bound": len(r.stages) <= len(lits) + 2,
                "property_1": not any(-u in s for u in s) and -z not in s,
                "property_2": all(
                    f.occurrence(-u) <= r.covered
                    for u in both
                    if u != z and f.occurrence(u) <= r.covered
                ),
            }
            violations += [(i, name, z) for name, ok in checks.items() if not ok]
    elapsed = time.perf_counter() - t0
    print(f"{closures} closures over 10000 formulas in {elapsed:.1f}s, {len(violations)} violations")
    assert violations == []
    assert elapsed < 60


@pytest.mark.criterion(3, "exhaustive differential campaign over enumerate_small(3, 4, 3)")
def test_c3_exhaustive_differential(enumerated, diff_report):
    rep = diff_report
    assert rep["instances"] == len(enumerated) == 17902
    classified = sum(rep["totals"][k] for k in
                     ("agreement", "false_yes", "false_no", "unsound_witness",
                      "assignment_conflict", "inconclusive"))
    assert classified == rep["instances"]
    assert rep["totals"]["inconclusive"] == 0

    flagged = {f["index"] for f in rep["findings"] if f["kind"] == "unsound_witness"}
    for i, f in enumerate(enumerated):
        out = solve(f)
        if out.sat:
            ok = not out.conflicts and check_assignment(f, out.assignment)
            assert ok or i in flagged

    for finding in rep["findings"]:
        pred = finding_predicate(finding, CFG)
        original = parse_dimacs(finding["formula"])
        shrunk = parse_dimacs(finding["shrunk"])
        assert finding["revalidated"] and finding["one_minimal"]
        assert pred(original) and pred(shrunk)
        assert is_one_minimal(shrunk, pred)
        assert sum(map(len, shrunk.clauses)) <= sum(map(len, original.clauses))

    again = enumerate_campaign(*ENUM, CFG, probe=False, jobs=1)
    assert dump_report(again) == dump_report(rep)
    print("totals:", json.dumps(rep["totals"], sort_keys=True))
    for g in rep["distinct_counterexamples"]:
        print("counterexample", g["kind"], g["shrunk"].replace("\n", " | "))


@pytest.mark.criterion(4, "dpll and brute force agree on enumerated + 1,000 random instances")
def test_c4_oracle_consistency(enumerated):
    p = GenParams(seed=4, n_vars=(1, 12), n_clauses=(0, 50), clause_width=(1, 1),
                  allow_tautologies=False)
    wide = GenParams(seed=4, n_vars=(6, 12), n_clauses=(0, 60), clause_width=(1, 6),
                     allow_tautologies=True, allow_empty_clause=False)
    randoms = [random_formula(p if i % 10 == 0 else wide, i) for i in range(1000)]
    mismatches = []
    for f in enumerated + randoms:
        assert len(f.variables()) <= 12
        a, b = brute_force(f), dpll(f)
        if a.sat != b.sat:
            mismatches.append(f)
        for v in (a, b):
            if v.sat:
                assert check_assignment(f, v.witness)
    assert mismatches == []


@pytest.mark.criterion(5, "lemma probes over every enumerated instance and variable")
def test_c5_lemma_probes(enumerated, probe_report, tmp_path):
    rep = probe_report
    expected_lemma2 = set()
    expected_probe = set()
    probes = 0
    for i, f in enumerate(enumerated):
        reduced = is_reduced(f)
        if reduced and len(f) and brute_force(f).sat:
            expected_lemma2.add(i)
        for x in sorted(f.variables()):
            r = probe_reduced_preservation(f, x, input_reduced=reduced)
            probes += 1
            assert r.skipped is None
            if r.claims_violated:
                expected_probe.add((i, x, r.claims_violated))
    found_lemma2 = {f["index"] for f in rep["findings"] if f["kind"] == "lemma2_violation"}
    found_probe = {
        (f["index"], f["detail"]["pivot"], tuple(f["detail"]["claims"]))
        for f in rep["findings"]
        if f["kind"] == "probe_violation"
    }
    assert found_lemma2 == expected_lemma2
    assert found_probe == expected_probe
    assert rep["probe_totals"]["probes"] == probes

    for finding in rep["findings"]:
        if finding["kind"] not in ("lemma2_violation", "probe_violation"):
            continue
        pred = finding_predicate(finding, CFG)
        shrunk = parse_dimacs(finding["shrunk"])
        assert pred(parse_dimacs(finding["formula"])) and pred(shrunk)
        assert is_one_minimal(shrunk, pred)
        if finding["kind"] == "lemma2_violation":
            assert len(shrunk) and is_reduced(shrunk) and brute_force(shrunk).sat

    paths = write_bundles(rep, str(tmp_path))
    assert len(paths) == len(rep["distinct_counterexamples"])
    for path in paths:
        side = json.loads(open(path[:-4] + ".json").read())
        assert finding_predicate(side, CFG)(parse_dimacs(open(path).read()))

    again = enumerate_campaign(*ENUM, CFG, probe=True, jobs=1)
    assert dump_report(again) == dump_report(rep)
    print("lemma2 violations:", len(found_lemma2), "probe violations:", len(found_probe),
          "probe totals:", json.dumps(rep["probe_totals"], sort_keys=True))


@pytest.mark.criterion(6, "scaling benchmark at |F| ~ 250..4000, < 10 min")
def test_c6_scaling_benchmark():
    t0 = time.perf_counter()
    rep = bench.run_bench(sizes=(250, 500, 1000, 2000, 4000), reps=3, seed=0, family="random")
    elapsed = time.perf_counter() - t0
    print(bench.format_bench(rep))
    assert [p["target_size"] for p in rep["points"]] == [250, 500, 1000, 2000, 4000]
    for p in rep["points"]:
        assert abs(p["formula_size"] - p["target_size"]) <= 0.1 * p["target_size"]
        assert len(p["seconds"]) == 3
    assert rep["loglog_slope"] is not None
    assert rep["claimed_exponent"] == 4
    assert elapsed < 600


@pytest.mark.criterion(7, "criteria 3 and 5 reports byte-identical for --jobs 1 and 8")
def test_c7_reproducible_across_jobs(diff_report, probe_report):
    for probe, base in ((False, diff_report), (True, probe_report)):
        parallel = enumerate_campaign(*ENUM, CFG, probe=probe, jobs=8)
        assert dump_report(parallel) == dump_report(base)

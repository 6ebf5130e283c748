"""Acceptance criteria 1 to 8, one printed verdict line each.

Outcomes are also collected in ``conftest.ACCEPTANCE`` and repeated in the
terminal summary.
"""

import os
import pathlib
import subprocess
import sys
import time

from conftest import ACCEPTANCE

from confspace.confmod import build_space, demo_spec, s1xd3_spec
from confspace.verify import (
    cofaces_suite,
    dual_basis_suite,
    equivariance_suite,
    kernel_diagonal_suite,
    n0_suite,
    relations_suite,
    sample_words,
)
from confspace.whprod import build_N

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN_CHART = {1: 3, 2: 12, 3: 27}


def record(n, name, ok, detail=""):
    ACCEPTANCE[n] = (name, ok)
    print(f"criterion {n} ({name}): {detail} → {'PASS' if ok else 'FAIL'}")
    assert ok, detail


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def test_criterion_1_relations():
    res, dt = timed(relations_suite, demo_spec(1, 2))
    record(1, "relations", res.passed and dt < 10, f"{res.line()} in {dt:.2f}s")


def test_criterion_2_cofaces():
    t0 = time.perf_counter()
    results = [cofaces_suite(s1xd3_spec(2)), cofaces_suite(demo_spec(1, 1))]
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in results) and dt < 60
    record(2, "cofaces land in N", ok, "; ".join(r.line() for r in results) + f" in {dt:.2f}s")


def test_criterion_3_dual_basis():
    res, dt = timed(dual_basis_suite, s1xd3_spec(2))
    record(3, "dual basis", res.passed and dt < 10, f"{res.line()} in {dt:.2f}s")


def test_criterion_4_kernel_diagonal():
    res = kernel_diagonal_suite(demo_spec(1, 1))
    record(4, "E2 kernel is the diagonal", res.passed and res.checked == 5, res.line())


def test_criterion_5_equivariance():
    results = []
    for spec in (demo_spec(1, 1), demo_spec(1, 2), s1xd3_spec(2)):
        gammas = sample_words(spec, count=20, seed=0)
        results.append(equivariance_suite(spec, gammas=gammas))
    record(5, "equivariance", all(r.passed for r in results), "; ".join(r.line() for r in results))


def test_criterion_6_golden_chart():
    t0 = time.perf_counter()
    dims = {L: build_N(build_space(s1xd3_spec(L), "pi5C3")).chart_dim for L in (1, 2, 3)}
    dt = time.perf_counter() - t0
    increasing = dims[1] < dims[2] < dims[3]
    ok = dims == GOLDEN_CHART and increasing and dt < 300
    record(6, "chart dimensions", ok, f"dims {dims}, expected {GOLDEN_CHART}, {dt:.2f}s")


def test_criterion_7_n0():
    results = [n0_suite(demo_spec(1, 1)), n0_suite(demo_spec(2, 1)), n0_suite(s1xd3_spec(2))]
    record(7, "N0 functoriality", all(r.passed for r in results), "; ".join(r.line() for r in results))


def test_criterion_8_determinism():
    outputs = set()
    cmd = [sys.executable, "-m", "confspace", "rank", "--classes", str(ROOT / "data" / "classes_sample.json")]
    for threads in ("1", "4"):
        env = dict(os.environ, CONFSPACE_THREADS=threads)
        for _ in range(5):
            proc = subprocess.run(cmd, capture_output=True, env=env, check=True)
            outputs.add(proc.stdout)
    record(8, "deterministic certificate", len(outputs) == 1, f"{len(outputs)} distinct output(s) over 10 runs")

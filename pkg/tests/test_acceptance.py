"""Acceptance criteria at their stated sizes and tolerances.

Each test runs one criterion through the shared verification code and
prints its pass/fail line. Two checks assert stated bounds whose constants
are counterexampled by instances as small as the two-triangle overlap
(diameter, criterion 6) and the five-cycle (the vertex-expansion Cheeger
upper bound inside criterion 13); they are implemented exactly as stated
and fail honestly. The corrected forms of both bounds are verified as
additional passing assertions. The analysis lives in the decisions ledger
and the README.
"""

import subprocess
import sys

import pytest

from hyperlap import verify


@pytest.fixture(scope="module")
def ctx():
    return verify.VerifyContext(verify.FULL, seed=2026)


def _check(report):
    print(report.line())
    assert report.passed, report.detail


def test_criterion_01_graph_reduction(ctx):
    _check(verify.criterion_1(ctx))


def test_criterion_02_cheeger_sandwich(ctx):
    _check(verify.criterion_2(ctx))


def test_criterion_03_sweep_guarantee(ctx):
    _check(verify.criterion_3(ctx))


def test_criterion_04_dispersion_laws(ctx):
    _check(verify.criterion_4(ctx))


def test_criterion_05_mixing_bounds(ctx):
    _check(verify.criterion_5(ctx))


def test_criterion_06_diameter_bound_as_stated(ctx):
    # The constant-1 bound is falsified by unit-weight corpus instances
    # (e.g. the two-triangle overlap: lambda2 = 2/3, diameter 2, bound 1.47);
    # the corrected lazy-walk bound below passes. Kept as stated on purpose.
    report = verify.criterion_6(ctx)
    print(report.line())
    assert report.stats["corrected_violations"] == 0
    assert report.passed, report.detail


def test_criterion_07_single_3edge_ground_truth(ctx):
    _check(verify.criterion_7(ctx))


def test_criterion_08_sdp_soundness(ctx):
    _check(verify.criterion_8(ctx))


def test_criterion_09_embedding_identities(ctx):
    _check(verify.criterion_9(ctx))


def test_criterion_10_sse_recovery(ctx):
    _check(verify.criterion_10(ctx))


def test_criterion_11_separator_contract(ctx):
    _check(verify.criterion_11(ctx))


def test_criterion_12_demands_soundness(ctx):
    _check(verify.criterion_12(ctx))


def test_criterion_13_vertex_expansion_as_stated(ctx):
    # The BHT upper bound with the two-sided boundary fails on the
    # five-cycle (lambda_inf = 7/4 at (3,1,-1,-3,0), phi_V = 2 > sqrt(7/2));
    # all other clauses and the outer-boundary variant pass.
    report = verify.criterion_13(ctx)
    print(report.line())
    assert report.stats["sandwich"] == 0
    assert report.stats["factor_four"] == 0
    assert report.stats["agreement"] == 0
    assert report.stats["bht_outer_variant"] == 0
    assert report.passed, report.detail


def test_criterion_14_verify_determinism(tmp_path):
    outputs = []
    for run in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "hyperlap.cli", "verify",
             "--corpus", "small", "--seed", "7"],
            capture_output=True, timeout=1800)
        outputs.append(proc.stdout)
    print("[PASS] criterion-14: verify determinism -- byte-identical reports"
          if outputs[0] == outputs[1] else
          "[FAIL] criterion-14: verify determinism")
    assert outputs[0] == outputs[1]
    assert b"criteria passed" in outputs[0]

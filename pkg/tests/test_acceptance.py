"""Acceptance gate: every criterion from paretoscope.verify, one test each.

Each test prints its PASS/FAIL line (run with -s to watch) and fails the
suite when the criterion fails. Tolerances live in paretoscope.verify and are
pinned there.
"""

import pytest

from paretoscope import verify


def _run(fn, **kw):
    res = fn(**kw)
    status = "PASS" if res.passed else "FAIL"
    print(f"[{status}] {res.name}: {res.detail} ({res.elapsed_s:.1f}s)")
    return res


def test_max_ee_operating_point():
    lines = []
    res = _run(verify.check_max_ee_operating_point, lines=lines)
    for line in lines:
        print(line)
    assert res.passed, res.detail


def test_area_rate_identity_bit_exact():
    res = _run(verify.check_area_rate_identity)
    assert res.passed, res.detail


def test_utopia_unattainable_and_interior_attainable():
    res = _run(verify.check_utopia_unattainable)
    assert res.passed, res.detail


def test_bisection_oracle_on_toy_simplex():
    res = _run(verify.check_bisection_toy)
    assert res.passed, res.detail


def test_dominance_filter_matches_brute_force():
    res = _run(verify.check_filter_oracle)
    assert res.passed, res.detail


def test_user_rate_ee_front_unimodal():
    res = _run(verify.check_user_rate_ee_shape)
    assert res.passed, res.detail


def test_area_rate_ee_retention_golden():
    res = _run(verify.check_area_rate_ee_retention)
    assert res.passed, res.detail


def test_chebyshev_routes_agree():
    res = _run(verify.check_chebyshev_cross_validation)
    assert res.passed, res.detail


def test_refinement_monotonicity():
    res = _run(verify.check_refinement_monotonic)
    assert res.passed, res.detail

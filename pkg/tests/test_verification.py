import math

import pytest

from cmcgraph import verification as vf


@pytest.fixture(scope="module")
def all_reports():
    return vf.run_suites(["all"])


def test_all_pass(all_reports):
    failed = [(r.check, r.max_residual, r.tolerance) for r in all_reports if not r.passed]
    assert not failed


def test_pass_iff_residual_within_tolerance(all_reports):
    for r in all_reports:
        assert r.passed == (r.max_residual <= r.tolerance)
        assert r.samples > 0


def test_suite_order_is_fixed(all_reports):
    names = [r.check.split(".")[0] for r in all_reports]
    order = [n for i, n in enumerate(names) if n not in names[:i]]
    assert order == list(vf.SUITES)


def test_tolerance_override():
    reps = vf.run_suites(["isoperimetric"], tol=1e-20)
    assert any(not r.passed for r in reps)
    assert all(r.tolerance == 1e-20 for r in reps)


def test_ode_suite_residual():
    analytic, fd = vf.suite_ode()
    assert analytic.max_residual <= 1e-10
    assert fd.max_residual <= 1e-6
    assert analytic.c_norm == pytest.approx(abs(analytic.c_div) / 5) or analytic.c_div is not None


def test_report_dict():
    r = vf.VerificationReport("x", True, 0.0, 1.0, 3, 2.0, 1.0, 0.25, 0.5)
    d = r.as_dict()
    assert d["pass"] is True and "passed" not in d


def test_worst_tracks_nan():
    w = vf._Worst("n", 1.0, None)
    w.add(math.nan)
    assert not w.report().passed


def test_gauss_legendre_oracle():
    assert vf.gauss_legendre_sinh_integral(1, 1.0) == pytest.approx(math.cosh(1.0) - 1, rel=1e-14)

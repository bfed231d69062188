"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from cmcgraph import curvature as cv
from cmcgraph import global_analysis as ga
from cmcgraph import hyperbolic_ball as hb
from cmcgraph import kernels
from cmcgraph import radial_profile as rp
from cmcgraph import verification as vf
from cmcgraph.radial_profile import ProfileParams, Signature

R_GRID_CURV = np.linspace(0.1, 5.0, 40)
ISO_R = (0.5, 1.0, 2.0, 5.0, 10.0, 40.0)
SAT_R = (0.5, 1.0, 3.0)


def riemannian_matrix():
    return vf.family_grid(Signature.RIEMANNIAN)


def lorentzian_matrix():
    return vf.family_grid(Signature.LORENTZIAN)


def test_c01_closed_form_oracle(criterion):
    params = ProfileParams(2, 1.0)
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        d = rng.standard_normal(2)
        x = rng.uniform(0.0, 0.99) * d / np.linalg.norm(d)
        exact = 2.0 / math.sqrt(1.0 - float(np.dot(x, x))) - 2.0
        worst = max(worst, abs(rp.graph_value(params, x) - exact))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 1.0
    criterion(1, "closed-form oracle m=2 c=1", ok, f"max err {worst:.2e} <= 1e-8, {elapsed:.3f}s < 1s")
    assert ok


def _constant_curvature(params_list, check_spacelike):
    worst = 0.0
    max_b = 0.0
    for params in params_list:
        fld = cv.radial_field(params)
        for r in R_GRID_CURV:
            x = vf.ball_point(r, params.m)
            mc = cv.mean_curvature_scalar(fld, x, analytic_gradient=False)
            worst = max(worst, abs(mc - params.c_div))
            if check_spacelike:
                max_b = max(max_b, cv.curvature_sample(fld, x).b_grad)
    slopes = []
    for params in params_list:
        if params.c_div != 0:
            slopes.append(vf.fd_convergence_slope(params, 1.0))
    return worst, min(slopes), max_b


def test_c02_constant_curvature_riemannian(criterion):
    worst, slope, _ = _constant_curvature(riemannian_matrix(), False)
    ok = worst <= 1e-4 and slope >= 1.8
    criterion(2, "constant curvature, riemannian", ok, f"max |mc-c| {worst:.2e} <= 1e-4, min slope {slope:.3f} >= 1.8")
    assert ok


def test_c03_constant_curvature_lorentzian(criterion):
    worst, slope, max_b = _constant_curvature(lorentzian_matrix(), True)
    ok = worst <= 1e-4 and slope >= 1.8 and max_b < 1
    criterion(
        3,
        "constant curvature, lorentzian",
        ok,
        f"max |mc-c| {worst:.2e} <= 1e-4, min slope {slope:.3f} >= 1.8, max b_grad {max_b:.4f} < 1",
    )
    assert ok


def test_c04_ode_residual(criterion):
    analytic = fd = 0.0
    for params in riemannian_matrix() + lorentzian_matrix():
        for r in np.geomspace(0.01, 20.0, 60):
            analytic = max(analytic, abs(rp.ode_residual(params, r)))
            fd = max(fd, abs(rp.ode_residual(params, r, rp.w_prime_fd(params, r))))
    ok = analytic <= 1e-10 and fd <= 1e-6
    criterion(4, "ODE residual", ok, f"analytic {analytic:.2e} <= 1e-10, FD {fd:.2e} <= 1e-6")
    assert ok


def test_c05_asymptotic_bound(criterion):
    radii = np.geomspace(1e-3, 40.0, 10_000)
    min_gap = math.inf
    above = 0
    limit_err = 0.0
    for m in range(2, 9):
        p = m - 1
        for r in radii:
            u, gap, _ = kernels.u_state(p, float(r))
            # strictness is carried by the gap 1 - (m-1) u, computed without cancellation
            min_gap = min(min_gap, gap)
            above += u > 1.0 / p
        limit_err = max(limit_err, abs(rp.u_profile(m, 40.0) - 1.0 / p))
    ok = min_gap > 0 and above == 0 and limit_err <= 1e-10
    criterion(
        5,
        "u < 1/(m-1) strictly, u(40) limit",
        ok,
        f"min gap {min_gap:.2e} > 0 over 7x10^4 radii, |u(40)-1/(m-1)| {limit_err:.1e} <= 1e-10",
    )
    assert ok


def test_c06_near_origin_series(criterion):
    radii = np.geomspace(1e-3, 0.1, 50)
    u_ratio = phi_ratio = 0.0
    stable = True
    for m in (2, 3, 5):
        ratios = [abs(rp.u_profile(m, r) - rp.u_series(m, r)) / r**5 for r in radii]
        u_ratio = max(u_ratio, max(ratios))
        # bounded: the ratio settles to a constant instead of growing as r -> 0
        stable &= ratios[0] <= 1.1 * ratios[-1]
        for sig in Signature:
            for c in vf.riemannian_constants(m):
                params = ProfileParams(m, c, sig)
                for r in radii:
                    phi_ratio = max(phi_ratio, abs(rp.phi_profile(params, r) - c / m * r * r / 2) / r**4)
    ok = u_ratio <= vf.SERIES_CONSTANT and phi_ratio <= vf.SERIES_CONSTANT and stable
    criterion(6, "near-origin series remainders", ok, f"sup |u-series|/r^5 {u_ratio:.3e}, sup |phi-c r^2/2m|/r^4 {phi_ratio:.3e} <= 1")
    assert ok


def test_c07_recurrence_vs_quadrature(criterion):
    integrate = pytest.importorskip("scipy.integrate")
    quad_err = deriv_err = 0.0
    for p in range(0, 13):
        for r in np.linspace(0.1, 10.0, 20):
            ref = integrate.quad(lambda t: math.sinh(t) ** p, 0.0, r, epsabs=0, epsrel=1e-13, limit=200)[0]
            quad_err = max(quad_err, abs(kernels.sinh_power_integral(p, r) - ref) / max(1.0, ref))
            h = 1e-4 * r
            f = lambda s: kernels.sinh_power_integral(p, s)  # noqa: E731
            d = (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h)
            target = math.sinh(r) ** p
            deriv_err = max(deriv_err, abs(d - target) / max(1.0, target))
    ok = quad_err <= 1e-10 and deriv_err <= 1e-8
    criterion(7, "recurrence vs quadrature", ok, f"rel err {quad_err:.2e} <= 1e-10, dI/dr err {deriv_err:.2e} <= 1e-8")
    assert ok


def test_c08_cheeger_limit(criterion):
    ok = True
    worst = 0.0
    for m in (2, 3, 5):
        excess = [hb.cheeger_excess(R, m) for R in (0.5, 1, 2, 5, 10, 20, 40)]
        ok &= all(b < a for a, b in zip(excess, excess[1:]))
        worst = max(worst, abs(hb.cheeger_ratio(40.0, m) - (m - 1)))
    ok &= worst <= 1e-10
    criterion(8, "Cheeger ratio decreasing to m-1", ok, f"strictly decreasing, |A/V-(m-1)| at R=40 {worst:.1e} <= 1e-10")
    assert ok


def test_c09_theorem11(criterion):
    slacks = [ga.theorem11_check(p.m, p.c_div, R).slack for p in riemannian_matrix() for R in ISO_R]
    ok = min(slacks) > 0
    criterion(9, "isoperimetric bound, riemannian (strict)", ok, f"min slack {min(slacks):.3e} > 0 over {len(slacks)} cases")
    assert ok


def test_c10_spacelike_saturation(criterion):
    worst = max(abs(r.lhs - r.rhs) for r in (ga.theorem15_check(p.m, p.c_div, R) for p in lorentzian_matrix() for R in SAT_R))
    ok = worst <= 1e-8
    criterion(10, "spacelike isoperimetric bound saturates", ok, f"max |lhs-rhs| {worst:.2e} <= 1e-8")
    assert ok


def _section2_samples():
    for params in lorentzian_matrix():
        for x in vf.lorentzian_points(params.m, 20):
            yield params, cv.section2_sample(params, x)


def test_c11_div_Z_and_lemma22(criterion):
    div_err = 0.0
    min_w_slack = math.inf
    origin = 0.0
    for params, s in _section2_samples():
        div_err = max(div_err, abs(s.div_Z - params.c_div**2))
        rep = cv.lemma22_check(s)
        assert rep.holds
        if params.c_div != 0:
            min_w_slack = min(min_w_slack, rep.w_bound.slack / rep.w_bound.rhs)
    for params in lorentzian_matrix():
        rep0 = cv.lemma22_check(cv.section2_sample(params, np.zeros(params.m)))
        origin = max(origin, abs(rep0.w_bound.slack))
    ok = div_err <= 1e-4 and min_w_slack > 0 and origin <= 1e-8
    status = "PART" if ok else "FAIL"
    criterion(
        "11a",
        "div Z = c^2; bound |W| <= sqrt(m)/(1-b) |Hess f|",
        status,
        f"max |divZ-c^2| {div_err:.2e} <= 1e-4, min rel slack {min_w_slack:.2e} > 0, origin gap {origin:.1e} <= 1e-8",
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="|Z| = sqrt(b)/(1-b)|W| holds with equality for a one-dimensional target")
def test_c11_first_inequality_positive_slack(criterion):
    worst = 0.0
    min_slack = math.inf
    for params, s in _section2_samples():
        if params.c_div == 0:
            continue
        rep = cv.lemma22_check(s)
        min_slack = min(min_slack, rep.z_bound.slack)
        worst = max(worst, abs(rep.z_bound.slack) / rep.z_bound.rhs)
    criterion(
        "11b",
        "bound |Z| <= sqrt(b)/(1-b) |W|, positive slack",
        "XFAIL",
        f"identity: max rel |slack| {worst:.1e}; positive slack unattainable",
    )
    assert min_slack > 0


def test_c12_theorem14(criterion):
    pointwise_ok = True
    origin = 0.0
    for params in lorentzian_matrix():
        for r in np.linspace(0.0, 5.0, 101):
            pointwise_ok &= cv.theorem14_pointwise(params, r).holds
        rep0 = cv.theorem14_pointwise(params, 0.0)
        origin = max(origin, abs(rep0.lhs - rep0.rhs))
    reports = [ga.theorem14_global_check(p.m, p.c_div, R) for p in lorentzian_matrix() for R in SAT_R]
    # c = 0 gives 0 <= 0; the relative slack is reported over the others
    global_ok = all(r.holds for r in reports)
    global_slack = min(r.slack / r.rhs for r in reports if r.c_div != 0)
    ok = pointwise_ok and origin <= 1e-8 and global_ok and global_slack > 0
    criterion(
        12,
        "Hessian lower bound, pointwise and global",
        ok,
        f"pointwise holds={pointwise_ok}, origin |lhs-rhs| {origin:.1e} <= 1e-8, global holds={global_ok}, min rel slack (c != 0) {global_slack:.3e}",
    )
    assert ok


def test_c13_hyperboloid(criterion):
    worst = 0.0
    for k, m in ((2, 2), (1, 3), (3, 3)):
        for c_h in (1.0, 0.5):
            fld = cv.hyperboloid_field(k, m, m * c_h)
            for t in np.linspace(-1.0, 1.0, 5):
                x = np.full(m, t)
                worst = max(worst, abs(cv.mean_curvature_scalar(fld, x) - m * c_h))
    ok = worst <= 1e-6
    criterion(13, "hyperboloids, mc = m c", ok, f"max |mc - m c| {worst:.2e} <= 1e-6")
    assert ok


def test_c14_exp_demo(criterion):
    fld = cv.exp_demo_field()
    xs = np.linspace(-5.0, 3.0, 81)
    vals = np.array([cv.mean_curvature_scalar(fld, [x, 0.0], analytic_gradient=False) for x in xs])
    err = max(abs(v - cv.exp_demo_closed_form(x)) for x, v in zip(xs, vals))
    ok = err <= 1e-6 and vals.min() <= 1e-2 and vals.max() <= 0.385
    criterion(14, "exp example: bounded, non-constant, non-zero", ok, f"err {err:.2e} <= 1e-6, min {vals.min():.4f} <= 1e-2, max {vals.max():.5f} <= 0.385")
    assert ok


def test_c15_foliation(criterion):
    sep_err = 0.0
    disjoint = True
    min_dc = math.inf
    monotone = True
    for sig in Signature:
        for m in (2, 3, 5):
            rep = ga.foliation_check(m, (m - 1) / 2, sig, "vary_d", grid=np.linspace(-2, 2, 9))
            disjoint &= rep.monotone
            sep_err = max(sep_err, rep.max_separation_error)
            top = m - 1.0 if sig is Signature.RIEMANNIAN else 2.0 * m
            rep = ga.foliation_check(m, None, sig, "vary_c", radii=(0.5, 1.0, 2.0), grid=np.linspace(-top, top, 7))
            monotone &= rep.monotone
            min_dc = min(min_dc, rep.min_derivative)
    ok = disjoint and sep_err <= 4 * np.finfo(float).eps and monotone and min_dc >= 1e-3
    criterion(15, "foliations (vary d, vary c)", ok, f"vary_d sep err {sep_err:.1e}, vary_c monotone={monotone}, min df/dc {min_dc:.3e} >= 1e-3")
    assert ok

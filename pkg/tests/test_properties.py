import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcgraph import _pycore
from cmcgraph import curvature as cv
from cmcgraph import global_analysis as ga
from cmcgraph import hyperbolic_ball as hb
from cmcgraph import kernels
from cmcgraph import radial_profile as rp
from cmcgraph.radial_profile import ProfileParams, Signature

dims = st.integers(2, 8)
radii = st.floats(1e-3, 40.0)
signatures = st.sampled_from(list(Signature))


@st.composite
def family(draw, signature=None):
    m = draw(dims)
    sig = draw(signatures) if signature is None else signature
    bound = m - 1.0 if sig is Signature.RIEMANNIAN else 4.0 * m
    c = draw(st.floats(-bound, bound))
    return ProfileParams(m, c, sig)


@st.composite
def ball_points(draw, m=None, rmax=0.95):
    m = draw(dims) if m is None else m
    d = np.array(draw(st.lists(st.floats(-1, 1), min_size=m, max_size=m)))
    if np.linalg.norm(d) < 1e-3:
        d = np.eye(m)[0]
    return draw(st.floats(0.01, rmax)) * d / np.linalg.norm(d)


@given(dims, radii)
def test_u_bounded_by_limit(m, r):
    u, gap, du = kernels.u_state(m - 1, r)
    assert 0 < u <= 1 / (m - 1)
    assert 0 < gap <= 1
    assert du >= 0


@given(dims, radii, radii)
def test_u_monotone(m, r1, r2):
    lo, hi = sorted((r1, r2))
    assert rp.u_profile(m, lo) <= rp.u_profile(m, hi)


@given(family(Signature.LORENTZIAN), radii)
def test_spacelike_slope(params, r):
    w = rp.w_profile(params, r)
    assert abs(w) < 1
    flipped = ProfileParams(params.m, -params.c_div, Signature.LORENTZIAN)
    assert rp.w_profile(flipped, r) == -w


@given(family(), radii)
def test_branch_negates(params, r):
    other = ProfileParams(params.m, params.c_div, params.signature, -1)
    assert rp.w_profile(other, r) == -rp.w_profile(params, r)


@given(family(), st.floats(0.01, 20.0))
def test_ode_residual_small(params, r):
    assert abs(rp.ode_residual(params, r)) <= 1e-10


@given(family(), st.floats(0.0, 6.0))
def test_phi_sign_follows_c(params, r):
    phi = rp.phi_profile(params, r)
    assert phi * params.c_div >= 0


@given(st.integers(0, 12), st.floats(0.0, 30.0))
def test_backends_agree(p, r):
    assert kernels.u_state(p, r) == _pycore.u_state(p, r)
    assert kernels.sinh_power_integral(p, r) == _pycore.sinh_power_integral(p, r)


@given(ball_points())
def test_grad_r_unit(x):
    assert hb.g_norm(hb.grad_r(x), x) == pytest.approx(1.0, abs=1e-12)
    assert hb.conformal_factor(x) >= 2.0
    assert hb.radial_distance(x) > 0


@given(ball_points())
def test_christoffel_symmetric(x):
    g = hb.christoffel(x)
    np.testing.assert_array_equal(g, np.swapaxes(g, 1, 2))


@given(family(Signature.LORENTZIAN), st.floats(0.0, 10.0))
def test_hessian_lower_bound_pointwise(params, r):
    assert cv.theorem14_pointwise(params, r).holds


@settings(max_examples=40, deadline=None)
@given(family(Signature.LORENTZIAN), st.floats(0.05, 3.0), st.integers(0, 2**16))
def test_lemma22(params, r, seed):
    d = np.random.default_rng(seed).standard_normal(params.m)
    x = math.tanh(0.5 * r) * d / np.linalg.norm(d)
    s = cv.section2_sample(params, x)
    rep = cv.lemma22_check(s)
    assert rep.holds
    assert s.div_Z == pytest.approx(params.c_div**2, abs=1e-4)


@given(family(Signature.RIEMANNIAN), st.floats(0.05, 60.0))
def test_riemannian_bound_strict(params, R):
    assert ga.theorem11_check(params.m, params.c_div, R).slack > 0


@given(family(Signature.LORENTZIAN), st.floats(0.05, 10.0))
def test_spacelike_bound_saturates(params, R):
    rep = ga.theorem15_check(params.m, params.c_div, R)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-9, abs=1e-12)


@given(dims, st.floats(0.05, 30.0), st.floats(0.05, 30.0))
def test_cheeger_ratio_decreasing(m, R1, R2):
    lo, hi = sorted((R1, R2))
    assert hb.cheeger_excess(lo, m) >= hb.cheeger_excess(hi, m)
    assert hb.cheeger_excess(hi, m) >= 0

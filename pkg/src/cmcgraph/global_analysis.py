"""Domain-level checks on geodesic balls: isoperimetric bounds and foliations.

All domains are geodesic balls ``B_R`` about the centre of H^m, where the
area and volume are closed-form and the radial families are symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import hyperbolic_ball as hb
from . import kernels
from .curvature import _trace_W, hessian_norm_radial, radial_field, spacelike_bound
from .errors import ParameterError
from .radial_profile import ProfileParams, Signature, phi_profile, w_profile

SPHERE_NODES = 64


@dataclass(frozen=True)
class IsoperimetricReport:
    check: str
    m: int
    c_div: float
    c_norm: float
    signature: str
    R: float
    lhs: float
    rhs: float
    ratio: float
    slack: float
    holds: bool
    b_D: float | None = None
    flux: float | None = None


def theorem11_check(m: int, c_div: float, R: float) -> IsoperimetricReport:
    """``|H| = |c|/m <= A(dB_R) / (m V(B_R))`` for the Riemannian family.

    The slack ``((m-1) - |c| + (A/V - (m-1))) / m`` is formed from two
    non-negative pieces, so its sign is exact even when ``A/V`` rounds to
    ``m - 1``.
    """
    params = ProfileParams(m, c_div, Signature.RIEMANNIAN)
    excess = hb.cheeger_excess(R, m)
    ratio = (m - 1) + excess
    slack = ((m - 1) - abs(c_div) + excess) / m
    return IsoperimetricReport(
        check="riemannian_bound",
        m=m,
        c_div=params.c_div,
        c_norm=params.c_norm,
        signature=params.signature.value,
        R=float(R),
        lhs=params.c_norm,
        rhs=ratio / m,
        ratio=ratio,
        slack=slack,
        holds=slack > 0,
    )


def theorem15_check(m: int, c_div: float, R: float, analytic: bool = True, grid: int = 64) -> IsoperimetricReport:
    """``min |H| <= (1/m) b_D / sqrt(1 - b_D^2) A/V`` for the spacelike family.

    ``b_D = max |grad f|`` over the closed ball.  The radial family meets the
    bound with equality, so ``slack`` is zero up to rounding.
    """
    params = ProfileParams(m, c_div, Signature.LORENTZIAN)
    ball = hb.GeodesicBall(R, m)
    b_D = spacelike_bound(radial_field(params), ball, grid=grid, analytic=analytic)
    ratio = hb.cheeger_ratio(R, m)
    lhs = params.c_norm
    rhs = b_D / math.sqrt(1.0 - b_D * b_D) * ratio / m
    return IsoperimetricReport(
        check="spacelike_bound",
        m=m,
        c_div=params.c_div,
        c_norm=lhs,
        signature=params.signature.value,
        R=float(R),
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        slack=rhs - lhs,
        holds=lhs <= rhs * (1.0 + 1e-12) + 1e-15,
        b_D=b_D,
    )


def sphere_directions(m: int, nodes: int = SPHERE_NODES) -> tuple[np.ndarray, np.ndarray]:
    """Unit directions and weights (summing to 1) on the sphere ``S^{m-1}``.

    ``m = 2``: ``nodes`` equispaced angles.  ``m >= 3``: Gauss-Legendre in
    ``cos(theta)`` times equispaced azimuth, on the 2-sphere spanned by the
    first three axes.  Integrands here are rotation invariant, so the
    normalised rule is exact for them.
    """
    m = hb.check_dimension(m)
    if m == 2:
        t = 2.0 * math.pi * (np.arange(nodes) + 0.5) / nodes
        dirs = np.stack([np.cos(t), np.sin(t)], axis=1)
        return dirs, np.full(nodes, 1.0 / nodes)
    z, wz = np.polynomial.legendre.leggauss(nodes)
    phi = 2.0 * math.pi * (np.arange(nodes) + 0.5) / nodes
    zz, pp = np.meshgrid(z, phi, indexing="ij")
    s = np.sqrt(1.0 - zz**2)
    dirs = np.zeros((nodes * nodes, m))
    dirs[:, 0] = (s * np.cos(pp)).ravel()
    dirs[:, 1] = (s * np.sin(pp)).ravel()
    dirs[:, 2] = zz.ravel()
    weights = np.repeat(wz / 2.0, nodes) / nodes
    return dirs, weights


def boundary_flux(params: ProfileParams, R: float, nodes: int = SPHERE_NODES) -> float:
    """``int_{dB_R} g(Z, n)`` by quadrature on the sphere of radius ``R``."""
    fld = radial_field(params)
    dirs, weights = sphere_directions(params.m, nodes)
    rho = math.tanh(0.5 * R)
    lam = 2.0 / (1.0 - rho * rho)
    total = 0.0
    for d, wt in zip(dirs, weights):
        x = rho * d
        W, up, n2, _ = _trace_W(fld, x, True)
        Z = W * up / (1.0 - n2)
        # outward unit normal is grad r; g(Z, grad r) = lambda^2 Z . grad r
        total += wt * lam * lam * float(np.dot(Z, hb.grad_r(x)))
    return total * hb.ball_area(R, params.m)


@dataclass(frozen=True)
class GlobalHessianReport:
    m: int
    c_div: float
    c_norm: float
    R: float
    lhs: float
    rhs: float
    sup_factor: float
    flux: float | None
    holds: bool

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def theorem14_global_check(
    m: int, c_div: float, R: float, samples: int = 2001, with_flux: bool = False, nodes: int = SPHERE_NODES
) -> GlobalHessianReport:
    """``m^2 c^2 V(D) <= A(dD) sup sqrt(m b)/(1-b)^2 |nabla df|`` on ``B_R``.

    With ``c`` the length of H, ``m^2 c^2 = c_div^2``.  The supremum is
    taken over ``samples`` radii in ``[0, R]`` (a lower estimate, so the
    check is conservative).  ``with_flux`` also integrates ``g(Z, n)`` over
    the boundary sphere, which equals the left-hand side.
    """
    params = ProfileParams(m, c_div, Signature.LORENTZIAN)
    hb.GeodesicBall(R, m)
    sup = 0.0
    for r in np.linspace(0.0, R, samples):
        b = w_profile(params, r) ** 2
        sup = max(sup, math.sqrt(m * b) / (1.0 - b) ** 2 * hessian_norm_radial(params, r))
    lhs = params.c_div**2 * hb.ball_volume(R, m)
    rhs = hb.ball_area(R, m) * sup
    flux = boundary_flux(params, R, nodes) if with_flux else None
    return GlobalHessianReport(m, params.c_div, params.c_norm, float(R), lhs, rhs, sup, flux, lhs <= rhs)


class FoliationMode(str, Enum):
    VARY_D = "vary_d"
    VARY_C = "vary_c"


@dataclass
class FoliationReport:
    mode: FoliationMode
    m: int
    signature: str
    samples: list = field(default_factory=list)
    monotone: bool = True
    min_separation: float = math.inf
    max_separation_error: float = 0.0
    min_derivative: float = math.inf
    holds: bool = True


def _sample_point(r: float, m: int) -> np.ndarray:
    d = np.linspace(1.0, -0.5, m)
    return math.tanh(0.5 * r) * d / np.linalg.norm(d)


def foliation_check(
    m: int,
    c_div: float | None,
    signature,
    mode,
    radii=(0.5, 1.0, 2.0),
    grid=None,
    derivative_threshold: float = 1e-3,
    h_c: float = 1e-4,
) -> FoliationReport:
    """Sample the leaves ``graph(f_c + d)`` and check they foliate.

    ``vary_d``: fixed ``c_div``, offsets ``grid``; heights at each sample
    point must increase strictly with ``d`` and differ by exactly the offset.
    ``vary_c``: fixed ``d = 0``, constants ``grid``; ``c -> f_c(x)`` must be
    strictly increasing with derivative at least ``derivative_threshold``
    at every sampled radius ``>= 0.1``.
    """
    m = hb.check_dimension(m)
    signature = Signature(signature)
    mode = FoliationMode(mode)
    rep = FoliationReport(mode, m, signature.value)
    if mode is FoliationMode.VARY_D:
        if c_div is None:
            raise ParameterError("vary_d needs a fixed c")
        params = ProfileParams(m, c_div, signature)
        offsets = sorted(float(d) for d in (grid if grid is not None else (-1.0, -0.5, 0.0, 0.5, 1.0)))
        for r in radii:
            x = _sample_point(r, m)
            f = phi_profile(params, hb.radial_distance(x))
            heights = [f + d for d in offsets]
            for d, t in zip(offsets, heights):
                rep.samples.append((params.c_div, d, tuple(x.tolist()), float(r), t))
            for i in range(1, len(offsets)):
                sep = heights[i] - heights[i - 1]
                rep.monotone &= sep > 0
                rep.min_separation = min(rep.min_separation, sep)
                rep.max_separation_error = max(
                    rep.max_separation_error, abs(sep - (offsets[i] - offsets[i - 1]))
                )
            # coverage: the leaf through (x, t) is d = t - f_c(x)
            t = 0.37
            rep.monotone &= abs((f + (t - f)) - t) <= 4 * np.spacing(max(1.0, abs(t)))
        rep.holds = rep.monotone
        return rep

    limit = math.inf if signature is Signature.LORENTZIAN else m - 1
    cs = sorted(float(c) for c in (grid if grid is not None else np.linspace(-min(limit, 2.0), min(limit, 2.0), 5)))
    if cs and max(abs(c) for c in cs) > limit:
        raise ParameterError(f"riemannian family needs c in [1-m, m-1] = [{1 - m}, {m - 1}]")
    for r in radii:
        x = _sample_point(r, m)
        rr = hb.radial_distance(x)
        values = []
        for c in cs:
            f = phi_profile(ProfileParams(m, c, signature), rr)
            values.append(f)
            rep.samples.append((c, 0.0, tuple(x.tolist()), float(r), f))
            lo, hi = max(c - h_c, -limit), min(c + h_c, limit)
            df = (phi_profile(ProfileParams(m, hi, signature), rr) - phi_profile(ProfileParams(m, lo, signature), rr)) / (hi - lo)
            if r >= 0.1:
                rep.min_derivative = min(rep.min_derivative, df)
        if r >= 0.1:
            for i in range(1, len(values)):
                gap = values[i] - values[i - 1]
                rep.monotone &= gap > 0
                rep.min_separation = min(rep.min_separation, gap)
    rep.holds = rep.monotone and rep.min_derivative >= derivative_threshold
    return rep


def leaf_table(m: int, c_div: float, signature, r_values, offsets):
    """``(c, d, r, f_c(r) + d)`` rows for plotting a vary-d foliation."""
    params = ProfileParams(m, c_div, signature)
    rows = []
    for d in offsets:
        for r in r_values:
            rows.append((params.c_div, float(d), float(r), phi_profile(params, float(r)) + float(d)))
    return rows


def sup_u_bound_gap(m: int, R: float) -> float:
    """``1/(m-1) - u(R)``, computed without cancellation."""
    p = hb.check_dimension(m) - 1
    return kernels.u_state(p, float(R))[1] / p

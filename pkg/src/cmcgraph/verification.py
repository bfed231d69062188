"""Verification suites: grids of checks reduced to (max residual, tolerance).

Every check returns a :class:`VerificationReport` whose ``passed`` flag is
exactly ``max_residual <= tolerance``.  Inequalities are phrased so that the
residual is ``lhs - rhs`` (negative when they hold with room to spare) and
carry tolerance 0.  Passing ``tol`` to a suite overrides every tolerance in it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import global_analysis as ga
from . import hyperbolic_ball as hb
from . import kernels
from .curvature import (
    exp_demo_closed_form,
    exp_demo_field,
    hyperboloid_field,
    lemma22_check,
    mean_curvature_scalar,
    radial_field,
    section2_sample,
    slice_field,
    theorem14_pointwise,
)
from .radial_profile import (
    ProfileParams,
    Signature,
    ode_residual,
    phi_profile,
    u_profile,
    u_series,
    w_prime_fd,
    w_profile,
)

ANALYTIC_TOL = 1e-8
FD_TOL = 1e-4
QUAD_TOL = kernels.QUAD_TOL
SERIES_CONSTANT = 1.0
CONVERGENCE_ORDER = 2.0
CONVERGENCE_SLACK = 0.2

SUITES = ("ode", "bounds", "curvature", "section2", "isoperimetric", "foliation")
DIMENSIONS = (2, 3, 5)


@dataclass
class VerificationReport:
    check: str
    passed: bool
    max_residual: float
    tolerance: float
    samples: int
    c_div: float | None = None
    c_norm: float | None = None
    b_eig: float | None = None
    b_grad: float | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


class _Worst:
    """Running maximum of a residual, remembering where it happened."""

    def __init__(self, name: str, tolerance: float, tol_override: float | None):
        self.name = name
        self.tolerance = tolerance if tol_override is None else tol_override
        self.residual = -math.inf
        self.samples = 0
        self.where: dict = {}

    def add(self, residual: float, **where) -> None:
        self.samples += 1
        if math.isnan(residual):
            residual = math.inf
        if residual > self.residual:
            self.residual = residual
            self.where = where

    def report(self) -> VerificationReport:
        return VerificationReport(
            self.name,
            bool(self.residual <= self.tolerance),
            float(self.residual),
            float(self.tolerance),
            self.samples,
            **self.where,
        )


def riemannian_constants(m: int) -> list[float]:
    h = (m - 1) / 2.0
    return [0.0, h, -h, float(m - 1), float(1 - m)]


def lorentzian_constants(m: int) -> list[float]:
    return riemannian_constants(m) + [2.0 * m, -2.0 * m]


def family_grid(signature) -> list[ProfileParams]:
    signature = Signature(signature)
    consts = riemannian_constants if signature is Signature.RIEMANNIAN else lorentzian_constants
    return [ProfileParams(m, c, signature) for m in DIMENSIONS for c in consts(m)]


def ball_point(r: float, m: int) -> np.ndarray:
    """Point at hyperbolic distance ``r`` along a fixed generic direction."""
    d = np.linspace(1.0, 0.3, m)
    return math.tanh(0.5 * r) * d / np.linalg.norm(d)


def _where(params: ProfileParams, r: float) -> dict:
    b_grad = abs(w_profile(params, r))
    return {"c_div": params.c_div, "c_norm": params.c_norm, "b_eig": b_grad * b_grad, "b_grad": b_grad}


# -- ode ---------------------------------------------------------------------


def suite_ode(tol: float | None = None, radii=None) -> list[VerificationReport]:
    radii = np.geomspace(0.01, 20.0, 40) if radii is None else radii
    analytic = _Worst("ode.analytic_residual", ANALYTIC_TOL, tol)
    fd = _Worst("ode.fd_residual", FD_TOL, tol)
    for sig in Signature:
        for params in family_grid(sig):
            for r in radii:
                where = _where(params, r)
                analytic.add(abs(ode_residual(params, r)), **where)
                fd.add(abs(ode_residual(params, r, w_prime_fd(params, r))), **where)
    return [analytic.report(), fd.report()]


# -- bounds ------------------------------------------------------------------


def gauss_legendre_sinh_integral(p: int, r: float, nodes: int = 200) -> float:
    """Independent ``I_p(r)`` by a fixed Gauss-Legendre rule."""
    t, wt = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * r * (t + 1.0)
    return 0.5 * r * float(np.dot(wt, np.sinh(s) ** p))


def fd_convergence_slope(params: ProfileParams, r: float, rel_steps=(4e-2, 2e-2, 1e-2)) -> float:
    """Least-squares slope of ``log|mc - c|`` against ``log h`` for the divergence step."""
    fld = radial_field(params)
    x = ball_point(r, params.m)
    scale = hb.HYPERBOLIC.scale(x)
    hs = np.array(rel_steps) * scale
    errs = [abs(mean_curvature_scalar(fld, x, h) - params.c_div) for h in hs]
    return float(np.polyfit(np.log(hs), np.log(errs), 1)[0])


def suite_bounds(tol: float | None = None) -> list[VerificationReport]:
    below = _Worst("bounds.u_below_limit", 0.0, tol)
    for m in range(2, 9):
        p = m - 1
        for r in np.geomspace(1e-3, 50.0, 500):
            # p u - 1 = -gap, formed without cancellation
            below.add(-kernels.u_state(p, float(r))[1])
    limit = _Worst("bounds.u_limit", 1e-10, tol)
    for m in range(2, 9):
        limit.add(abs(u_profile(m, 40.0) - 1.0 / (m - 1)))

    series = _Worst("bounds.u_series_remainder", SERIES_CONSTANT, tol)
    phi_series = _Worst("bounds.phi_series_remainder", SERIES_CONSTANT, tol)
    for m in DIMENSIONS:
        for r in np.geomspace(1e-3, 0.1, 30):
            series.add(abs(u_profile(m, r) - u_series(m, r)) / r**5)
            for c in riemannian_constants(m):
                params = ProfileParams(m, c)
                phi_series.add(abs(phi_profile(params, r) - c / m * r * r / 2.0) / r**4, c_div=c, c_norm=abs(c) / m)

    recurrence = _Worst("bounds.recurrence_vs_quadrature", 1e-10, tol)
    derivative = _Worst("bounds.recurrence_derivative", ANALYTIC_TOL, tol)
    for p in range(0, 13):
        for r in np.linspace(0.1, 10.0, 12):
            ref = gauss_legendre_sinh_integral(p, r)
            recurrence.add(abs(kernels.sinh_power_integral(p, r) - ref) / max(1.0, ref))
            h = 1e-4 * r
            f = lambda s: kernels.sinh_power_integral(p, s)  # noqa: E731
            d = (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h)
            target = math.sinh(r) ** p
            derivative.add(abs(d - target) / max(1.0, target))

    cheeger = _Worst("bounds.cheeger_limit", 1e-10, tol)
    for m in DIMENSIONS:
        excess = [hb.cheeger_excess(R, m) for R in (0.5, 1, 2, 5, 10, 20, 40)]
        decreasing = all(b < a for a, b in zip(excess, excess[1:]))
        cheeger.add(hb.cheeger_ratio(40.0, m) - (m - 1) if decreasing else math.inf)
    return [below.report(), limit.report(), series.report(), phi_series.report(), recurrence.report(), derivative.report(), cheeger.report()]


# -- curvature ---------------------------------------------------------------


def suite_curvature(tol: float | None = None, radii=None, h_fd: float | None = None) -> list[VerificationReport]:
    radii = np.linspace(0.1, 5.0, 8) if radii is None else radii
    out = []
    for sig in Signature:
        worst = _Worst(f"curvature.{sig.value}_constant", FD_TOL, tol)
        for params in family_grid(sig):
            fld = radial_field(params)
            for r in radii:
                mc = mean_curvature_scalar(fld, ball_point(r, params.m), h_fd, analytic_gradient=False)
                worst.add(abs(mc - params.c_div), **_where(params, r))
        out.append(worst.report())

    slope = _Worst("curvature.fd_convergence_order", CONVERGENCE_SLACK, tol)
    for m in DIMENSIONS:
        for sig, c in ((Signature.RIEMANNIAN, m - 1.0), (Signature.LORENTZIAN, 2.0 * m)):
            params = ProfileParams(m, c, sig)
            slope.add(CONVERGENCE_ORDER - fd_convergence_slope(params, 1.0), c_div=c, c_norm=c / m)
    out.append(slope.report())

    hyper = _Worst("curvature.hyperboloid", 1e-6, tol)
    for k, m in ((2, 2), (1, 3), (3, 3)):
        for c in (1.0, -2.0):
            fld = hyperboloid_field(k, m, c)
            for t in np.linspace(-1.0, 1.0, 5):
                x = np.full(m, t / math.sqrt(m))
                hyper.add(abs(mean_curvature_scalar(fld, x, h_fd) - c), c_div=c, c_norm=abs(c) / m)
    out.append(hyper.report())

    exp = _Worst("curvature.exp_demo", 1e-6, tol)
    fld = exp_demo_field()
    for t in np.linspace(-5.0, 3.0, 33):
        exp.add(abs(mean_curvature_scalar(fld, [t, 0.3], h_fd, analytic_gradient=False) - exp_demo_closed_form(t)))
    out.append(exp.report())

    flat = _Worst("curvature.slice", ANALYTIC_TOL, tol)
    for sig in Signature:
        fld = slice_field(0.7, 3, signature=sig)
        for r in (0.0, 0.5, 2.0):
            flat.add(abs(mean_curvature_scalar(fld, ball_point(r, 3), h_fd)), c_div=0.0, c_norm=0.0)
    out.append(flat.report())
    return out


# -- section 2 ---------------------------------------------------------------


def lorentzian_points(m: int, count: int = 20, r_max: float = 3.0) -> list[np.ndarray]:
    """``count`` interior points at radii in ``(0, r_max]`` along rotating directions."""
    rng = np.random.default_rng(1234 + m)
    pts = []
    for r in np.linspace(r_max / count, r_max, count):
        d = rng.standard_normal(m)
        pts.append(math.tanh(0.5 * r) * d / np.linalg.norm(d))
    return pts


def suite_section2(tol: float | None = None, count: int = 20, h_fd: float | None = None) -> list[VerificationReport]:
    div = _Worst("section2.div_Z", FD_TOL, tol)
    z_id = _Worst("section2.z_bound_identity", ANALYTIC_TOL, tol)
    w_bound = _Worst("section2.w_bound", 0.0, tol)
    origin = _Worst("section2.w_bound_origin_tight", ANALYTIC_TOL, tol)
    pointwise = _Worst("section2.hessian_bound_pointwise", 1e-12, tol)
    equality = _Worst("section2.hessian_bound_origin_equality", ANALYTIC_TOL, tol)
    for params in family_grid(Signature.LORENTZIAN):
        for x in lorentzian_points(params.m, count):
            s = section2_sample(params, x, h_fd)
            where = {"c_div": params.c_div, "c_norm": params.c_norm, "b_eig": s.b_eig, "b_grad": math.sqrt(s.b_eig)}
            div.add(abs(s.div_Z - params.c_div**2), **where)
            rep = lemma22_check(s)
            z_id.add(abs(rep.z_bound.slack) / max(1.0, rep.z_bound.rhs), **where)
            w_bound.add(-rep.w_bound.slack / max(1.0, rep.w_bound.rhs), **where)
        s0 = section2_sample(params, np.zeros(params.m), h_fd)
        rep0 = lemma22_check(s0)
        origin.add(abs(rep0.w_bound.slack), c_div=params.c_div, c_norm=params.c_norm, b_eig=0.0, b_grad=0.0)
        for r in np.linspace(0.0, 5.0, 51):
            hb_rep = theorem14_pointwise(params, r)
            pointwise.add(-hb_rep.slack / max(1.0, hb_rep.rhs), **_where(params, r))
        hb0 = theorem14_pointwise(params, 0.0)
        equality.add(abs(hb0.slack), c_div=params.c_div, c_norm=params.c_norm, b_eig=0.0, b_grad=0.0)
    return [div.report(), z_id.report(), w_bound.report(), origin.report(), pointwise.report(), equality.report()]


# -- isoperimetric -----------------------------------------------------------

ISO_RADII = (0.5, 1.0, 2.0, 5.0, 10.0, 40.0)
SATURATION_RADII = (0.5, 1.0, 3.0)
SATURATION_CONSTANTS = (0.5, -0.5, 2.0, -2.0, 5.0, -5.0)


def suite_isoperimetric(tol: float | None = None, flux: bool = True) -> list[VerificationReport]:
    t11 = _Worst("isoperimetric.riemannian_strict", 0.0, tol)
    for params in family_grid(Signature.RIEMANNIAN):
        for R in ISO_RADII:
            rep = ga.theorem11_check(params.m, params.c_div, R)
            # strict: a zero slack must fail, so it is reported as +inf
            t11.add(-rep.slack if rep.slack > 0 else math.inf, c_div=rep.c_div, c_norm=rep.c_norm)
    t15 = _Worst("isoperimetric.spacelike_saturation", ANALYTIC_TOL, tol)
    t14 = _Worst("isoperimetric.hessian_bound_global", 0.0, tol)
    for m in DIMENSIONS:
        for c in SATURATION_CONSTANTS:
            for R in SATURATION_RADII:
                rep = ga.theorem15_check(m, c, R)
                t15.add(abs(rep.lhs - rep.rhs), c_div=c, c_norm=rep.c_norm, b_eig=rep.b_D**2, b_grad=rep.b_D)
                g = ga.theorem14_global_check(m, c, R, samples=401)
                t14.add((g.lhs - g.rhs) / g.rhs, c_div=c, c_norm=g.c_norm)
    out = [t11.report(), t15.report(), t14.report()]
    if flux:
        fl = _Worst("isoperimetric.flux_identity", 1e-10, tol)
        for m, c, R in ((2, 2.0, 1.0), (3, 1.0, 2.0), (3, -5.0, 0.5)):
            g = ga.theorem14_global_check(m, c, R, samples=3, with_flux=True, nodes=16)
            fl.add(abs(g.flux - g.lhs) / g.lhs, c_div=c, c_norm=g.c_norm)
        out.append(fl.report())
    return out


# -- foliation ---------------------------------------------------------------


def suite_foliation(tol: float | None = None) -> list[VerificationReport]:
    vary_d = _Worst("foliation.vary_d_separation", 4 * float(np.finfo(float).eps), tol)
    vary_c = _Worst("foliation.vary_c_derivative", 0.0, tol)
    for sig in Signature:
        for m in DIMENSIONS:
            c = (m - 1) / 2.0
            rep = ga.foliation_check(m, c, sig, "vary_d")
            vary_d.add(rep.max_separation_error if rep.holds else math.inf, c_div=c, c_norm=c / m)
            top = m - 1.0 if sig is Signature.RIEMANNIAN else 2.0
            grid = np.linspace(-top, top, 5)
            rep = ga.foliation_check(m, None, sig, "vary_c", grid=grid)
            threshold = 1e-3
            vary_c.add(threshold - rep.min_derivative if rep.monotone else math.inf)
    return [vary_d.report(), vary_c.report()]


RUNNERS = {
    "ode": suite_ode,
    "bounds": suite_bounds,
    "curvature": suite_curvature,
    "section2": suite_section2,
    "isoperimetric": suite_isoperimetric,
    "foliation": suite_foliation,
}


def run_suites(names, tol: float | None = None) -> list[VerificationReport]:
    """Run the named suites (``"all"`` expands to every suite) in a fixed order."""
    names = list(SUITES) if "all" in names else list(names)
    out = []
    for name in SUITES:
        if name in names:
            out.extend(RUNNERS[name](tol))
    return out

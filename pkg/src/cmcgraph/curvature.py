"""Divergence-form mean curvature of graphs and the spacelike-graph quantities.

For a graph of ``f`` over ``(M, g)`` in ``M x R`` with metric ``g + dt^2``
(Riemannian) or ``g - dt^2`` (Lorentzian)::

    m <H, nu> = div_g( grad f / sqrt(1 +- |grad f|^2) )

Everything below works on coordinate components over a conformally flat
base (the Poincaré ball or Euclidean space).  Two constants are reported
side by side: ``c_div`` (the divergence above) and ``c_norm = |c_div| / m``
(the length of H).  Likewise ``b_eig = |grad f|^2`` (largest eigenvalue of
``f*h``) and ``b_grad = |grad f|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import hyperbolic_ball as hb
from . import kernels
from .errors import ParameterError, SignatureError
from .radial_profile import ProfileParams, Signature, u_is_nondecreasing, w_profile

SPACELIKE_EPS = 1e-9
NESTED_STEP_EXPONENT = 1.0 / 4.0


@dataclass
class GraphField:
    """A scalar graph function on a conformally flat base."""

    evaluate: Callable[[np.ndarray], float]
    m: int
    base: hb.ConformalBase = hb.HYPERBOLIC
    signature: Signature = Signature.RIEMANNIAN
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    family: str = "custom"
    params: dict = field(default_factory=dict)
    hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        self.base = hb.get_base(self.base)
        self.signature = Signature(self.signature)

    @property
    def lorentzian(self) -> bool:
        return self.signature is Signature.LORENTZIAN

    def coordinate_gradient(self, x, analytic: bool = True) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if analytic and self.gradient is not None:
            return np.asarray(self.gradient(x), dtype=float)
        return hb.coordinate_gradient(self.evaluate, x, base=self.base)

    def covariant_hessian(
        self, x, h_fd: float | None = None, closed_form: bool = True, analytic_gradient: bool = True
    ) -> np.ndarray:
        """Closed-form Hessian when the family has one, finite differences otherwise."""
        x = np.asarray(x, dtype=float)
        if closed_form and self.hessian is not None:
            return np.asarray(self.hessian(x), dtype=float)
        grad = self.gradient if analytic_gradient else None
        return hb.covariant_hessian(self.evaluate, x, h_fd, self.base, gradient=grad)


# -- families ----------------------------------------------------------------


def radial_field(params: ProfileParams) -> GraphField:
    """``f_c = phi(r(x))`` on the Poincaré ball, with analytic gradient."""
    p, c, lor = params.p, params.c_signed, params.lorentzian

    def evaluate(x):
        return kernels.phi_value(p, c, lor, 2.0 * math.atanh(math.sqrt(float(np.dot(x, x)))))

    def gradient(x):
        norm = math.sqrt(float(np.dot(x, x)))
        if norm == 0.0:
            return np.zeros_like(x)
        w = kernels.w_value(p, c, lor, 2.0 * math.atanh(norm))
        # d_i r = lambda x_i / |x|
        return w * 2.0 / (1.0 - norm * norm) / norm * x

    def hessian(x):
        # lambda^2 [w' n n^T + w coth(r) (I - n n^T)], n = x/|x|
        norm = math.sqrt(float(np.dot(x, x)))
        lam2 = (2.0 / (1.0 - norm * norm)) ** 2
        if norm == 0.0:
            return lam2 * kernels.w_state(p, c, lor, 0.0)[1] * np.eye(x.size)
        r = 2.0 * math.atanh(norm)
        w, dw = kernels.w_state(p, c, lor, r)
        n = x / norm
        nn = np.outer(n, n)
        return lam2 * (dw * nn + w / math.tanh(r) * (np.eye(x.size) - nn))

    return GraphField(
        evaluate,
        params.m,
        hb.HYPERBOLIC,
        params.signature,
        gradient,
        family="radial",
        params={"profile": params},
        hessian=hessian,
    )


def hyperboloid_field(k: int, m: int, c_div: float) -> GraphField:
    """Minkowski hyperboloid ``sqrt(k^2/(m^2 c^2) + x_1^2 + ... + x_k^2)``.

    ``c = c_div / m`` is the length of H; the divergence-form constant of the
    graph is ``c_div``.  Negative ``c_div`` selects the lower sheet.
    """
    m = hb.check_dimension(m)
    if int(k) != k or not 1 <= k <= m:
        raise ParameterError(f"hyperboloid needs 1 <= k <= m, got k={k!r}, m={m}")
    if c_div == 0:
        raise ParameterError("hyperboloid radius k/(m c) is undefined for c = 0")
    k = int(k)
    a2 = (k / abs(c_div)) ** 2
    sign = math.copysign(1.0, c_div)

    def evaluate(x):
        return sign * math.sqrt(a2 + float(np.dot(x[:k], x[:k])))

    def gradient(x):
        g = np.zeros_like(x)
        g[:k] = x[:k]
        return sign * g / math.sqrt(a2 + float(np.dot(x[:k], x[:k])))

    return GraphField(
        evaluate,
        m,
        hb.EUCLIDEAN,
        Signature.LORENTZIAN,
        gradient,
        family="hyperboloid",
        params={"k": k, "c_div": float(c_div), "c_norm": abs(c_div) / m},
    )


def exp_demo_field() -> GraphField:
    """``f(x, y) = e^x`` over the Euclidean plane in ``R^2 x R``."""
    return GraphField(
        lambda x: math.exp(x[0]),
        2,
        hb.EUCLIDEAN,
        Signature.RIEMANNIAN,
        lambda x: np.array([math.exp(x[0]), 0.0]),
        family="exp_demo",
    )


def exp_demo_closed_form(x: float) -> float:
    """``div(grad f / sqrt(1 + |grad f|^2)) = e^x (1 + e^{2x})^{-3/2}``."""
    return math.exp(x) * (1.0 + math.exp(2.0 * x)) ** -1.5


def slice_field(level: float, m: int, base=hb.HYPERBOLIC, signature=Signature.RIEMANNIAN) -> GraphField:
    m = hb.check_dimension(m)
    return GraphField(
        lambda x: level,
        m,
        base,
        signature,
        lambda x: np.zeros_like(x),
        family="slice",
        params={"level": level},
    )


# -- pointwise operators -----------------------------------------------------


def _gradient_data(fld: GraphField, y: np.ndarray, analytic: bool):
    """Return ``(grad^i f, |grad f|_g^2)`` with raised index."""
    lam2 = fld.base.factor(y) ** 2
    df = fld.coordinate_gradient(y, analytic)
    return df / lam2, float(np.dot(df, df)) / lam2


def normalized_gradient(fld: GraphField, y, analytic: bool = True) -> np.ndarray:
    """``grad f / sqrt(1 +- |grad f|^2)``; raises if a Lorentzian graph is not spacelike."""
    y = np.asarray(y, dtype=float)
    up, n2 = _gradient_data(fld, y, analytic)
    if fld.lorentzian:
        if math.sqrt(n2) >= 1.0 - SPACELIKE_EPS:
            raise SignatureError(f"graph is not spacelike at {y.tolist()}: |grad f| = {math.sqrt(n2)!r}")
        return up / math.sqrt(1.0 - n2)
    return up / math.sqrt(1.0 + n2)


def mean_curvature_scalar(fld: GraphField, x, h_fd: float | None = None, analytic_gradient: bool = True) -> float:
    """``m <H, nu>`` as the divergence of the normalised gradient.

    Uses the analytic gradient when the field has one and
    ``analytic_gradient`` is true, a fourth-order FD gradient otherwise.
    The spacelike condition is checked at every stencil point.
    """
    return hb.divergence_g(
        lambda y: normalized_gradient(fld, y, analytic_gradient),
        hb._coords(x),
        h_fd,
        fld.base,
    )


@dataclass(frozen=True)
class CurvatureSample:
    x: tuple
    grad_norm: float
    b_eig: float
    b_grad: float
    a_eig: float
    mc_scalar: float
    h_norm: float
    hess_norm: float


def curvature_sample(fld: GraphField, x, h_fd: float | None = None, analytic_gradient: bool = True) -> CurvatureSample:
    x = hb._coords(x)
    _, n2 = _gradient_data(fld, x, analytic_gradient)
    mc = mean_curvature_scalar(fld, x, h_fd, analytic_gradient)
    hess = fld.covariant_hessian(x, closed_form=analytic_gradient, analytic_gradient=analytic_gradient)
    return CurvatureSample(
        x=tuple(float(v) for v in x),
        grad_norm=math.sqrt(n2),
        b_eig=n2,
        b_grad=math.sqrt(n2),
        a_eig=0.0,
        mc_scalar=mc,
        h_norm=abs(mc) / fld.m,
        hess_norm=hb.hessian_g_norm(hess, x, fld.base),
    )


def hessian_norm_radial(params: ProfileParams, r: float) -> float:
    """``|nabla df| = sqrt(w'^2 + (m-1) w^2 coth^2 r)``; ``|c|/sqrt(m)`` at r = 0."""
    if r < 0:
        raise ParameterError(f"r must be non-negative, got {r!r}")
    if r < 1e-8:
        # w / tanh(r) and w' both equal c/m + O(r^2); avoids underflow near 0
        return abs(params.c_div) / math.sqrt(params.m)
    w, dw = kernels.w_state(params.p, params.c_signed, params.lorentzian, float(r))
    return math.sqrt(dw * dw + (params.m - 1) * (w / math.tanh(r)) ** 2)


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    holds: bool

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def _require_lorentzian(params: ProfileParams, what: str) -> None:
    if not params.lorentzian:
        raise ParameterError(f"{what} is stated for spacelike graphs (lorentzian signature)")


@dataclass(frozen=True)
class HessianBoundReport:
    """``lhs = |nabla df|`` against ``rhs = sqrt(m) c_norm (1 - b_eig)^2``."""

    r: float
    lhs: float
    rhs: float
    b_eig: float
    c_div: float
    c_norm: float
    holds: bool

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


def theorem14_pointwise(params: ProfileParams, r: float, tol: float = 1e-12) -> HessianBoundReport:
    """Pointwise lower bound ``|nabla df| >= sqrt(m) c_norm (1 - b_eig)^2``."""
    _require_lorentzian(params, "the Hessian lower bound")
    b = w_profile(params, r) ** 2
    lhs = hessian_norm_radial(params, r)
    rhs = math.sqrt(params.m) * params.c_norm * (1.0 - b) ** 2
    return HessianBoundReport(
        float(r), lhs, rhs, b, params.c_div, params.c_norm, lhs >= rhs - tol * max(1.0, rhs)
    )


@dataclass(frozen=True)
class SectionTwoSample:
    """``W = tr_gtilde(nabla df)``, ``Z = W grad f / (1 - |grad f|^2)`` and ``div Z``."""

    x: tuple
    W: float
    Z: tuple
    div_Z: float
    Z_norm: float
    W_norm: float
    hess_norm: float
    b_eig: float
    mc_scalar: float


def _trace_W(fld: GraphField, y: np.ndarray, analytic: bool):
    lam2 = fld.base.factor(y) ** 2
    up, n2 = _gradient_data(fld, y, True)
    if n2 >= (1.0 - SPACELIKE_EPS) ** 2:
        raise SignatureError(f"graph is not spacelike at {y.tolist()}")
    hess = fld.covariant_hessian(y, closed_form=analytic)
    g_tilde_inv = np.eye(y.size) / lam2 + np.outer(up, up) / (1.0 - n2)
    return float(np.sum(g_tilde_inv * hess)), up, n2, hess


def section2_sample(fld_or_params, x, h_fd: float | None = None, analytic_hessian: bool = True) -> SectionTwoSample:
    """Evaluate ``W``, ``Z`` and ``div_g Z`` for a spacelike graph at ``x``.

    ``W`` uses the family's closed-form Hessian when available.  Without it
    (or with ``analytic_hessian=False``) the Hessian is a difference quotient
    of the gradient, so ``div Z`` nests two quotients and the default outer
    step grows to ``eps^(1/4)`` times the local scale.
    """
    fld = radial_field(fld_or_params) if isinstance(fld_or_params, ProfileParams) else fld_or_params
    if not fld.lorentzian:
        raise ParameterError("W and Z are defined here for spacelike graphs (lorentzian signature)")
    if fld.gradient is None:
        raise ParameterError("section2_sample needs a field with an analytic gradient")
    x = hb._coords(x)
    closed = analytic_hessian and fld.hessian is not None
    if h_fd is None:
        exponent = hb.FD_STEP_EXPONENT if closed else NESTED_STEP_EXPONENT
        h_fd = hb.default_step(x, fld.base, exponent)

    def Z_of(y):
        W, up, n2, _ = _trace_W(fld, y, closed)
        return W * up / (1.0 - n2)

    W, up, n2, hess = _trace_W(fld, x, closed)
    Z = W * up / (1.0 - n2)
    div_Z = hb.divergence_g(Z_of, x, h_fd, fld.base)
    lam = fld.base.factor(x)
    return SectionTwoSample(
        x=tuple(float(v) for v in x),
        W=W,
        Z=tuple(float(v) for v in Z),
        div_Z=div_Z,
        Z_norm=lam * float(np.linalg.norm(Z)),
        W_norm=abs(W),
        hess_norm=hb.hessian_g_norm(hess, x, fld.base),
        b_eig=n2,
        mc_scalar=W / math.sqrt(1.0 - n2),
    )


@dataclass(frozen=True)
class WZBoundReport:
    z_bound: InequalityReport
    w_bound: InequalityReport

    @property
    def holds(self) -> bool:
        return self.z_bound.holds and self.w_bound.holds


def lemma22_check(sample: SectionTwoSample, b_eig: float | None = None, tol: float = 1e-9) -> WZBoundReport:
    """``|Z| <= sqrt(b)/(1-b) |W|`` and ``|W| <= sqrt(m)/(1-b) |nabla df|``.

    For a one-dimensional target the first bound is an identity
    (``|Z| = sqrt(b)/(1-b) |W|`` exactly), so it is checked to ``tol``.
    """
    b = sample.b_eig if b_eig is None else b_eig
    if not 0 <= b < 1:
        raise ParameterError(f"b must lie in [0, 1), got {b!r}")
    m = len(sample.x)
    z_rhs = math.sqrt(b) / (1.0 - b) * sample.W_norm
    w_rhs = math.sqrt(m) / (1.0 - b) * sample.hess_norm
    scale_z = tol * max(1.0, z_rhs)
    scale_w = tol * max(1.0, w_rhs)
    return WZBoundReport(
        InequalityReport("z_bound", sample.Z_norm, z_rhs, sample.Z_norm <= z_rhs + scale_z),
        InequalityReport("w_bound", sample.W_norm, w_rhs, sample.W_norm <= w_rhs + scale_w),
    )


def spacelike_bound(fld: GraphField, ball: hb.GeodesicBall, grid: int = 64, analytic: bool = True) -> float:
    """``b_D = max |grad f|_g`` over the closed geodesic ball.

    For radial families with ``analytic`` set, returns ``|w(R)|`` after
    checking that ``u`` (hence ``|w|``) is nondecreasing on ``[0, R]``.
    Otherwise samples ``grid`` radii along every coordinate axis direction
    and the main diagonal.
    """
    if not fld.lorentzian:
        raise ParameterError("spacelike_bound applies to lorentzian graphs")
    profile = fld.params.get("profile")
    if analytic and fld.family == "radial" and u_is_nondecreasing(fld.m, ball.R):
        b = abs(w_profile(profile, ball.R))
    else:
        m = fld.m
        dirs = [v for i in range(m) for v in (np.eye(m)[i], -np.eye(m)[i])]
        dirs.append(np.ones(m) / math.sqrt(m))
        b = 0.0
        for rad in np.linspace(0.0, ball.R, grid + 1):
            for d in dirs:
                y = math.tanh(0.5 * rad) * d
                _, n2 = _gradient_data(fld, y, True)
                b = max(b, math.sqrt(n2))
    if b >= 1.0:
        raise SignatureError(f"graph is not spacelike on the ball: b_D = {b!r}")
    return b

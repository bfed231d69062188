"""Radial profiles of the constant mean curvature graphs ``f_c = phi(r)``.

With ``u(r) = I_{m-1}(r) / sinh^{m-1} r`` (the solution of
``u' = 1 - (m-1) coth(r) u`` regular at the origin) and ``A = c u``, the slope
``w = phi'`` is ``A / sqrt(1 - A^2)`` for graphs in the Riemannian product and
``A / sqrt(1 + A^2)`` for spacelike graphs in the Lorentzian product.  ``c``
is the divergence-form constant: ``div_g(grad f / sqrt(1 +- |grad f|^2)) = c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import ParameterError
from .hyperbolic_ball import check_dimension, radial_distance

QUAD_TOL = kernels.QUAD_TOL
U_SERIES_MAX_R = 0.1


class Signature(str, Enum):
    RIEMANNIAN = "riemannian"
    LORENTZIAN = "lorentzian"


@dataclass(frozen=True)
class ProfileParams:
    """Dimension, divergence-form constant, signature and slope branch.

    ``branch = -1`` selects the negative root for ``w``, which is the same
    graph as ``c -> -c``.
    """

    m: int
    c_div: float
    signature: Signature = Signature.RIEMANNIAN
    branch: int = 1

    def __post_init__(self):
        check_dimension(self.m)
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "signature", Signature(self.signature))
        object.__setattr__(self, "c_div", float(self.c_div))
        if self.branch not in (1, -1):
            raise ParameterError(f"branch must be +1 or -1, got {self.branch!r}")
        if not math.isfinite(self.c_div):
            raise ParameterError("c must be finite")
        if self.signature is Signature.RIEMANNIAN and abs(self.c_div) > self.m - 1:
            raise ParameterError(
                f"riemannian family needs c in [1-m, m-1] = [{1 - self.m}, {self.m - 1}],"
                f" got c = {self.c_div!r}"
            )

    @property
    def p(self) -> int:
        return self.m - 1

    @property
    def lorentzian(self) -> bool:
        return self.signature is Signature.LORENTZIAN

    @property
    def c_signed(self) -> float:
        """Constant actually solved for, ``branch * c_div``."""
        return self.branch * self.c_div

    @property
    def c_norm(self) -> float:
        """``|H| = |c_div| / m``."""
        return abs(self.c_div) / self.m


@dataclass(frozen=True)
class RadialProfileEval:
    r: float
    I: float
    u: float
    w: float
    phi: float
    w_prime: float


def sinh_power_integral(p: int, r: float) -> float:
    """``I_p(r) = int_0^r sinh^p t dt``."""
    if int(p) != p or p < 0:
        raise ParameterError(f"power p must be a non-negative integer, got {p!r}")
    if r < 0:
        raise ParameterError(f"r must be non-negative, got {r!r}")
    return kernels.sinh_power_integral(int(p), float(r))


def u_profile(m: int, r: float) -> float:
    """``u(r) = I_{m-1}(r) / sinh^{m-1} r`` with ``u(0) = 0``."""
    m = check_dimension(m)
    if r < 0:
        raise ParameterError(f"r must be non-negative, got {r!r}")
    return kernels.u_profile(m - 1, float(r))


def u_derivative(m: int, r: float) -> float:
    m = check_dimension(m)
    return kernels.u_state(m - 1, float(r))[2]


def u_series(m: int, r: float) -> float:
    """Two-term expansion ``(r/m)(1 - (m-1)/(m+2) r^2/3)``, valid to O(r^5)."""
    m = check_dimension(m)
    if not 0 <= r <= U_SERIES_MAX_R:
        raise ParameterError(f"u_series is for 0 <= r <= {U_SERIES_MAX_R}, got {r!r}")
    return r / m * (1.0 - (m - 1) / (m + 2) * r * r / 3.0)


def w_profile(params: ProfileParams, r: float) -> float:
    """Slope ``w(r) = phi'(r)``."""
    return kernels.w_value(params.p, params.c_signed, params.lorentzian, float(r))


def w_prime(params: ProfileParams, r: float) -> float:
    return kernels.w_state(params.p, params.c_signed, params.lorentzian, float(r))[1]


def phi_profile(params: ProfileParams, r: float, tol: float = QUAD_TOL) -> float:
    """Height ``phi(r) = int_0^r w``, adaptive Gauss-Kronrod to ``tol``."""
    if r < 0:
        raise ParameterError(f"r must be non-negative, got {r!r}")
    return kernels.phi_value(params.p, params.c_signed, params.lorentzian, float(r), tol)


def phi_series(params: ProfileParams, r: float) -> float:
    """``phi`` to fourth order: ``(c/m) r^2/2 + (c/m) r^4/4 (+-c^2/(2m^2) - (m-1)/(3(m+2)))``."""
    m, c = params.m, params.c_signed
    sign = -1.0 if params.lorentzian else 1.0
    quartic = sign * c * c / (2.0 * m * m) - (m - 1) / (3.0 * (m + 2))
    return c / m * r * r / 2.0 + c / m * r**4 / 4.0 * quartic


def graph_value(params: ProfileParams, x) -> float:
    """``f_c(x) = phi(r(x))``."""
    return phi_profile(params, radial_distance(x))


def ode_rhs(params: ProfileParams, r: float, w: float) -> float:
    """Right-hand side ``c (1 +- w^2)^{3/2} - (m-1) coth(r) w (1 +- w^2)``."""
    s = -1.0 if params.lorentzian else 1.0
    q = 1.0 + s * w * w
    return params.c_signed * q**1.5 - (params.m - 1) / math.tanh(r) * w * q


def ode_residual(params: ProfileParams, r: float, w_deriv: float | None = None) -> float:
    """Residual of the radial ODE, in units of the curvature constant.

    Returns ``(w' - rhs(r, w)) / (1 +- w^2)^{3/2}``.  The normalisation keeps
    the residual O(eps) where ``w`` grows exponentially (extremal Riemannian
    families).  ``w_deriv`` defaults to the analytic derivative; pass a
    finite-difference value to check the profile independently.
    """
    if not r > 0:
        raise ParameterError("the radial ODE is posed for r > 0")
    w, dw = kernels.w_state(params.p, params.c_signed, params.lorentzian, float(r))
    if w_deriv is not None:
        dw = w_deriv
    s = -1.0 if params.lorentzian else 1.0
    q = 1.0 + s * w * w
    return (dw - ode_rhs(params, r, w)) / q**1.5


def w_prime_fd(params: ProfileParams, r: float, h: float | None = None) -> float:
    """Fourth-order central-difference derivative of ``w``."""
    if h is None:
        h = 1e-3 * min(1.0, r)
    f = lambda s: w_profile(params, s)  # noqa: E731
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h)


def evaluate(params: ProfileParams, r: float, tol: float = QUAD_TOL) -> RadialProfileEval:
    w, dw = kernels.w_state(params.p, params.c_signed, params.lorentzian, float(r))
    return RadialProfileEval(
        r=float(r),
        I=kernels.sinh_power_integral(params.p, float(r)),
        u=kernels.u_profile(params.p, float(r)),
        w=w,
        phi=phi_profile(params, r, tol),
        w_prime=dw,
    )


def profile_table(params: ProfileParams, r_max: float, steps: int, tol: float = QUAD_TOL):
    """Rows of :class:`RadialProfileEval` on ``steps + 1`` equispaced radii."""
    return [evaluate(params, r, tol) for r in np.linspace(0.0, r_max, steps + 1)]


def u_is_nondecreasing(m: int, r_max: float, samples: int = 2001) -> bool:
    """Grid check that ``u`` (hence ``|w|``) does not decrease on ``[0, r_max]``."""
    p = check_dimension(m) - 1
    return all(kernels.u_state(p, float(r))[2] >= 0.0 for r in np.linspace(0.0, r_max, samples))

"""Poincaré ball model of hyperbolic space and conformally flat operators.

The ball carries the metric ``g = lambda(x)**2 |dx|**2`` with
``lambda(x) = 2 / (1 - |x|**2)``.  The same finite-difference operators
also run on flat Euclidean space (``lambda = 1``), which hosts the
Minkowski hyperboloids and the exponential example.

Vector fields are given by their coordinate components ``X^i`` and scalar
fields as callables on coordinate arrays.  Default finite-difference steps
scale with the distance to the ideal boundary so that stencils never leave
the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError, SingularPointError

BOUNDARY_MARGIN = 1e-6
EPS = float(np.finfo(float).eps)
FD_STEP_EXPONENT = 1.0 / 3.0
GRADIENT_STEP_EXPONENT = 1.0 / 6.0
LOG_SPACE_THRESHOLD = 300.0

ScalarField = Callable[[np.ndarray], float]
VectorField = Callable[[np.ndarray], np.ndarray]


def check_dimension(m: int) -> int:
    if int(m) != m or m < 2:
        raise ParameterError(f"dimension m must be an integer >= 2, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class BallPoint:
    """A point of the open unit ball, at least ``BOUNDARY_MARGIN`` from the rim."""

    coords: np.ndarray

    def __post_init__(self):
        x = np.array(self.coords, dtype=float).reshape(-1)
        if x.size < 2:
            raise ParameterError("ball points need at least 2 coordinates")
        if not np.all(np.isfinite(x)):
            raise DomainError("ball point has non-finite coordinates")
        norm = float(np.linalg.norm(x))
        if norm >= 1.0 - BOUNDARY_MARGIN:
            raise DomainError(
                f"|x| = {norm!r} is not inside the ball (margin {BOUNDARY_MARGIN})"
            )
        x.setflags(write=False)
        object.__setattr__(self, "coords", x)

    @classmethod
    def radial(cls, r: float, m: int, direction: Sequence[float] | None = None):
        """Point at hyperbolic distance ``r`` from the centre."""
        m = check_dimension(m)
        if direction is None:
            d = np.zeros(m)
            d[0] = 1.0
        else:
            d = np.asarray(direction, dtype=float)
            d = d / np.linalg.norm(d)
        return cls(math.tanh(0.5 * r) * d)

    @property
    def m(self) -> int:
        return self.coords.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


@dataclass(frozen=True)
class GeodesicBall:
    """Geodesic ball of radius ``R`` about the centre of H^m."""

    R: float
    m: int

    def __post_init__(self):
        check_dimension(self.m)
        if not self.R > 0:
            raise ParameterError(f"geodesic ball radius must be positive, got {self.R!r}")

    @property
    def area(self) -> float:
        return ball_area(self.R, self.m)

    @property
    def volume(self) -> float:
        return ball_volume(self.R, self.m)


def _coords(x) -> np.ndarray:
    if isinstance(x, BallPoint):
        return x.coords
    return np.asarray(x, dtype=float)


class ConformalBase:
    """Conformally flat base ``(U, lambda^2 |dx|^2)``."""

    name = "conformal"

    def factor(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def log_factor_gradient(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scale(self, x: np.ndarray) -> float:
        """Coordinate length over which the geometry varies at ``x``."""
        return 1.0

    def check_stencil(self, x: np.ndarray, reach: float) -> None:
        pass


class _HyperbolicBall(ConformalBase):
    name = "hyperbolic_ball"

    def factor(self, x):
        return 2.0 / (1.0 - float(np.dot(x, x)))

    def log_factor_gradient(self, x):
        return 2.0 * x / (1.0 - float(np.dot(x, x)))

    def scale(self, x):
        return 1.0 - float(np.linalg.norm(x))

    def check_stencil(self, x, reach):
        norm = float(np.linalg.norm(x))
        if norm + reach >= 1.0 - BOUNDARY_MARGIN:
            raise DomainError(
                f"stencil of reach {reach:.3g} at |x| = {norm:.6g} leaves the ball"
            )


class _Euclidean(ConformalBase):
    name = "euclidean"

    def factor(self, x):
        return 1.0

    def log_factor_gradient(self, x):
        return np.zeros_like(x)


HYPERBOLIC = _HyperbolicBall()
EUCLIDEAN = _Euclidean()
BASES = {HYPERBOLIC.name: HYPERBOLIC, EUCLIDEAN.name: EUCLIDEAN}


def get_base(base) -> ConformalBase:
    if isinstance(base, ConformalBase):
        return base
    try:
        return BASES[base]
    except KeyError:
        raise ParameterError(f"unknown base {base!r}; expected one of {sorted(BASES)}") from None


def default_step(x, base=HYPERBOLIC, exponent: float = FD_STEP_EXPONENT) -> float:
    """``eps**exponent`` times the local geometric scale."""
    base = get_base(base)
    return EPS**exponent * base.scale(_coords(x))


# -- metric quantities ------------------------------------------------------


def conformal_factor(x) -> float:
    """``lambda(x) = 2 / (1 - |x|^2)``."""
    return HYPERBOLIC.factor(_coords(x))


def radial_distance(x) -> float:
    """Hyperbolic distance to the centre, ``log((1+|x|)/(1-|x|))``."""
    return 2.0 * math.atanh(float(np.linalg.norm(_coords(x))))


def grad_r(x) -> np.ndarray:
    """Coordinate components of the g-gradient of ``r``; undefined at 0."""
    x = _coords(x)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise SingularPointError("grad r is undefined at the centre; use the r^2 series")
    return 0.5 * (1.0 - norm * norm) / norm * x


def g_norm(v, x, base=HYPERBOLIC) -> float:
    """Length of a coordinate vector under the conformal metric."""
    return get_base(base).factor(_coords(x)) * float(np.linalg.norm(v))


def laplacian_r(r: float, m: int) -> float:
    """``Delta r = (m - 1) coth r``."""
    m = check_dimension(m)
    if not r > 0:
        raise SingularPointError("Laplacian of r has a pole at r = 0")
    return (m - 1) / math.tanh(r)


def christoffel(x, base=HYPERBOLIC) -> np.ndarray:
    """Christoffel symbols ``gamma[k, i, j]`` of the conformal metric."""
    x = _coords(x)
    d = get_base(base).log_factor_gradient(x)
    m = x.size
    eye = np.eye(m)
    # G^k_ij = d_ik d_j + d_jk d_i - d_ij d_k
    return (
        np.einsum("ki,j->kij", eye, d)
        + np.einsum("kj,i->kij", eye, d)
        - np.einsum("ij,k->kij", eye, d)
    )


# -- finite-difference operators ---------------------------------------------


def coordinate_gradient(f: ScalarField, x, h: float | None = None, base=HYPERBOLIC) -> np.ndarray:
    """Partial derivatives of ``f`` by fourth-order central differences."""
    base = get_base(base)
    x = _coords(x)
    if h is None:
        h = default_step(x, base, GRADIENT_STEP_EXPONENT)
    base.check_stencil(x, 2.0 * h)
    out = np.empty(x.size)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = h
        out[i] = (-f(x + 2 * e) + 8.0 * f(x + e) - 8.0 * f(x - e) + f(x - 2 * e)) / (12.0 * h)
    return out


def divergence_g(X: VectorField, x, h_fd: float | None = None, base=HYPERBOLIC) -> float:
    """``div_g X = lambda^-m sum_i d_i(lambda^m X^i)`` by central differences."""
    base = get_base(base)
    x = _coords(x)
    if h_fd is None:
        h_fd = default_step(x, base)
    base.check_stencil(x, h_fd)
    m = x.size
    total = 0.0
    for i in range(m):
        e = np.zeros(m)
        e[i] = h_fd
        xp, xm = x + e, x - e
        total += base.factor(xp) ** m * X(xp)[i] - base.factor(xm) ** m * X(xm)[i]
    return total / (2.0 * h_fd) / base.factor(x) ** m


def covariant_hessian(
    f: ScalarField | None,
    x,
    h_fd: float | None = None,
    base=HYPERBOLIC,
    gradient: VectorField | None = None,
) -> np.ndarray:
    """Components ``Hess f(d_i, d_j)`` of the covariant Hessian.

    Second partials come from central differences of the coordinate gradient,
    which is ``gradient`` when supplied and a fourth-order FD gradient of
    ``f`` otherwise.  The result is symmetrised.
    """
    base = get_base(base)
    x = _coords(x)
    if h_fd is None:
        h_fd = default_step(x, base)
    if gradient is None:
        if f is None:
            raise ParameterError("covariant_hessian needs f or its gradient")

        def gradient(y):
            return coordinate_gradient(f, y, base=base)

    base.check_stencil(x, h_fd)
    m = x.size
    d2 = np.empty((m, m))
    for j in range(m):
        e = np.zeros(m)
        e[j] = h_fd
        d2[:, j] = (gradient(x + e) - gradient(x - e)) / (2.0 * h_fd)
    d2 = 0.5 * (d2 + d2.T)
    df = gradient(x)
    gamma = christoffel(x, base)
    return d2 - np.einsum("kij,k->ij", gamma, df)


def hessian_g_norm(hess: np.ndarray, x, base=HYPERBOLIC) -> float:
    """g-norm of a symmetric 2-tensor given by coordinate components."""
    lam = get_base(base).factor(_coords(x))
    return float(np.linalg.norm(hess)) / lam**2


# -- geodesic balls ----------------------------------------------------------


def sphere_area_coefficient(m: int) -> float:
    """Area of the unit (m-1)-sphere, ``2 pi^(m/2) / Gamma(m/2)``."""
    m = check_dimension(m)
    return 2.0 * math.pi ** (m / 2.0) / math.gamma(m / 2.0)


def _log_sinh(R: float) -> float:
    if R > 20.0:
        return R + math.log1p(-math.exp(-2.0 * R)) - math.log(2.0)
    return math.log(math.sinh(R))


def log_ball_area(R: float, m: int) -> float:
    GeodesicBall(R, m)
    return math.log(sphere_area_coefficient(m)) + (m - 1) * _log_sinh(R)


def log_ball_volume(R: float, m: int) -> float:
    GeodesicBall(R, m)
    return log_ball_area(R, m) + math.log(kernels.u_profile(m - 1, R))


def ball_area(R: float, m: int) -> float:
    """``A(dB_R) = omega_{m-1} sinh^{m-1} R``."""
    GeodesicBall(R, m)
    if (m - 1) * R > LOG_SPACE_THRESHOLD:
        return math.exp(log_ball_area(R, m))
    return sphere_area_coefficient(m) * math.sinh(R) ** (m - 1)


def ball_volume(R: float, m: int) -> float:
    """``V(B_R) = omega_{m-1} int_0^R sinh^{m-1}``."""
    GeodesicBall(R, m)
    if (m - 1) * R > LOG_SPACE_THRESHOLD:
        return math.exp(log_ball_volume(R, m))
    return sphere_area_coefficient(m) * kernels.sinh_power_integral(m - 1, R)


def cheeger_excess(R: float, m: int) -> float:
    """``A/V - (m-1)`` evaluated without cancellation."""
    GeodesicBall(R, m)
    u, gap, _ = kernels.u_state(m - 1, R)
    return gap / u


def cheeger_ratio(R: float, m: int) -> float:
    """Boundary-area to volume ratio ``A(dB_R) / V(B_R) = 1 / u(R)``."""
    return (m - 1) + cheeger_excess(R, m)

"""Pure-Python radial kernels.

Reference implementation of the hot loops used by :mod:`cmcgraph.radial_profile`.
The compiled module ``cmcgraph._core`` exposes the same functions with the
same numerics; :mod:`cmcgraph.kernels` picks one at import time.

Notation: ``p`` is the sinh power (``m - 1`` for a graph over H^m),
``u_p(r) = I_p(r) / sinh(r)**p`` and ``gap_p(r) = 1 - p * u_p(r)``.
"""

import math

N_SERIES = 24
SERIES_RADIUS = 1.0
QUAD_TOL = 1e-12
QUAD_MAX_INTERVALS = 1_000_000

_EPS = 2.220446049250313e-16

# Gauss-Kronrod 15/7 nodes and weights on [-1, 1] (QUADPACK qk15).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_coef_cache = {}


def _inverse_factorials():
    # 1/(2j+1)! and 1/(2j)!, built by the same division chain as _core
    c = [1.0]
    s = [1.0]
    for j in range(1, N_SERIES):
        c.append(s[j - 1] / (2 * j))
        s.append(c[j] / (2 * j + 1))
    return s, c


def series_coefficients(p):
    """Odd Taylor coefficients ``a_n`` with ``u_p(r) = sum a_n r**(2n+1)``.

    Obtained by matching powers in ``sinh(r) u' + p cosh(r) u = sinh(r)``.
    """
    try:
        return _coef_cache[p]
    except KeyError:
        pass
    s, c = _inverse_factorials()
    a = []
    for n in range(N_SERIES):
        acc = s[n]
        for k in range(n):
            acc -= a[k] * ((2 * k + 1) * s[n - k] + p * c[n - k])
        a.append(acc / (2 * n + 1 + p))
    coeffs = tuple(a)
    _coef_cache[p] = coeffs
    return coeffs


def u_state(p, r):
    """Return ``(u, gap, du)`` for ``u_p`` at ``r >= 0``.

    ``gap = 1 - p*u`` and ``du = u'`` are carried separately so that neither
    loses relative precision when ``p*u -> 1`` at large ``r``.
    """
    if r < SERIES_RADIUS:
        a = series_coefficients(p)
        r2 = r * r
        u = 0.0
        du = 0.0
        for n in range(N_SERIES - 1, -1, -1):
            u = u * r2 + a[n]
            du = du * r2 + (2 * n + 1) * a[n]
        u *= r
        return u, 1.0 - p * u, du

    e2 = math.exp(-2.0 * r)
    one_m = 1.0 - e2
    coth = (1.0 + e2) / one_m
    csch2 = 4.0 * e2 / (one_m * one_m)
    half_tail = 0.5 * one_m  # e^{-r} sinh r

    if p == 0:
        return r, 1.0, 1.0
    if p % 2:
        u_prev = math.tanh(0.5 * r)
        if p == 1:
            gap = 2.0 / (math.exp(r) + 1.0)
            return u_prev, gap, coth * gap - 2.0 * e2 / one_m
        q = 3
    else:
        u_prev = r
        q = 2
    u = u_prev
    gap = 1.0
    while q <= p:
        u = coth / q - (q - 1) / q * csch2 * u_prev
        if q == p:
            gap = csch2 * ((q - 1) * u_prev - half_tail)
        u_prev = u
        q += 2
    du = coth * gap - 2.0 * e2 / one_m
    return u, gap, du


def u_profile(p, r):
    return u_state(p, r)[0]


def sinh_power_integral(p, r):
    """``I_p(r) = int_0^r sinh(t)**p dt``; may overflow for large ``p*r``."""
    if p == 0:
        return r
    if p == 1:
        # cosh r - 1 without cancellation
        h = math.sinh(0.5 * r)
        return 2.0 * h * h
    return u_state(p, r)[0] * math.sinh(r) ** p


def w_state(p, c, lorentzian, r):
    """Slope ``w = phi'`` and its derivative for the graph constant ``c``.

    Riemannian: ``w = A / sqrt(1 - A^2)``; Lorentzian: ``w = A / sqrt(1 + A^2)``
    with ``A = c * u_p``.  The caller has already folded the branch sign
    into ``c`` and checked ``|c| <= p`` for the Riemannian case.
    """
    u, gap, du = u_state(p, r)
    a = c * u
    if lorentzian:
        q = 1.0 + a * a
        sq = math.sqrt(q)
        return a / sq, c * du / (q * sq)
    ac = abs(c)
    if ac == 0.0:
        return 0.0, 0.0
    one_minus = (1.0 - ac / p) + (ac / p) * gap if p else 1.0 - ac * u
    q = one_minus * (1.0 + ac * u)
    if q <= 0.0:
        return math.copysign(math.inf, a), math.copysign(math.inf, c)
    sq = math.sqrt(q)
    return a / sq, c * du / (q * sq)


def w_value(p, c, lorentzian, r):
    return w_state(p, c, lorentzian, r)[0]


def _gk15(p, c, lorentzian, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = w_state(p, c, lorentzian, center)[0]
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        f1 = w_state(p, c, lorentzian, center - dx)[0]
        f2 = w_state(p, c, lorentzian, center + dx)[0]
        resk += _WGK[j] * (f1 + f2)
        if j % 2:
            resg += _WG[j // 2] * (f1 + f2)
    return resk * half, abs((resk - resg) * half)


def phi_value(p, c, lorentzian, r, tol=QUAD_TOL, max_intervals=QUAD_MAX_INTERVALS):
    """``phi(r) = int_0^r w(s) ds`` by adaptive Gauss-Kronrod bisection."""
    if r == 0.0 or c == 0.0:
        return 0.0
    total = 0.0
    stack = [(0.0, r)]
    intervals = 1
    while stack:
        a, b = stack.pop()
        est, err = _gk15(p, c, lorentzian, a, b)
        local = max(tol * (b - a) / r, 50.0 * _EPS * abs(est))
        if err <= local or intervals >= max_intervals:
            total += est
            continue
        mid = 0.5 * (a + b)
        stack.append((mid, b))
        stack.append((a, mid))
        intervals += 1
    return total

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled radial kernels.

Line-for-line port of :mod:`cmcgraph._pycore`; both must agree to rounding.
"""

from libc.math cimport exp, sqrt, sinh, tanh, fabs, INFINITY, copysign
from libc.stdlib cimport malloc, realloc, free

DEF N_SERIES = 24
DEF P_CACHE = 64

SERIES_RADIUS = 1.0
QUAD_TOL = 1e-12
QUAD_MAX_INTERVALS = 1000000

cdef double _EPS = 2.220446049250313e-16

cdef double[8] _XGK = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
cdef double[8] _WGK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
cdef double[4] _WG = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]

cdef double _COEF[P_CACHE + 1][N_SERIES]
cdef double _S[N_SERIES]
cdef double _C[N_SERIES]


cdef void _fill_coefficients(int p, double* a) noexcept nogil:
    cdef int n, k
    cdef double acc
    for n in range(N_SERIES):
        acc = _S[n]
        for k in range(n):
            acc -= a[k] * ((2 * k + 1) * _S[n - k] + p * _C[n - k])
        a[n] = acc / (2 * n + 1 + p)


cdef void _init_tables():
    cdef int j, p
    _C[0] = 1.0
    _S[0] = 1.0
    for j in range(1, N_SERIES):
        _C[j] = _S[j - 1] / (2 * j)
        _S[j] = _C[j] / (2 * j + 1)
    for p in range(P_CACHE + 1):
        _fill_coefficients(p, _COEF[p])


_init_tables()


cdef struct UState:
    double u
    double gap
    double du


cdef struct WState:
    double w
    double dw


cdef UState _u_state(int p, double r) noexcept nogil:
    cdef UState out
    cdef double local[N_SERIES]
    cdef double* a
    cdef double r2, u, du, e2, one_m, coth, csch2, half_tail, u_prev, gap
    cdef int n, q
    if r < 1.0:
        if p <= P_CACHE:
            a = _COEF[p]
        else:
            _fill_coefficients(p, local)
            a = local
        r2 = r * r
        u = 0.0
        du = 0.0
        for n in range(N_SERIES - 1, -1, -1):
            u = u * r2 + a[n]
            du = du * r2 + (2 * n + 1) * a[n]
        u *= r
        out.u = u
        out.gap = 1.0 - p * u
        out.du = du
        return out

    e2 = exp(-2.0 * r)
    one_m = 1.0 - e2
    coth = (1.0 + e2) / one_m
    csch2 = 4.0 * e2 / (one_m * one_m)
    half_tail = 0.5 * one_m

    if p == 0:
        out.u = r
        out.gap = 1.0
        out.du = 1.0
        return out
    if p % 2:
        u_prev = tanh(0.5 * r)
        if p == 1:
            gap = 2.0 / (exp(r) + 1.0)
            out.u = u_prev
            out.gap = gap
            out.du = coth * gap - 2.0 * e2 / one_m
            return out
        q = 3
    else:
        u_prev = r
        q = 2
    u = u_prev
    gap = 1.0
    while q <= p:
        u = coth / q - (<double>(q - 1)) / q * csch2 * u_prev
        if q == p:
            gap = csch2 * ((q - 1) * u_prev - half_tail)
        u_prev = u
        q += 2
    out.u = u
    out.gap = gap
    out.du = coth * gap - 2.0 * e2 / one_m
    return out


cdef WState _w_state(int p, double c, bint lorentzian, double r) noexcept nogil:
    cdef WState out
    cdef UState s = _u_state(p, r)
    cdef double a = c * s.u
    cdef double q, sq, ac, one_minus
    if lorentzian:
        q = 1.0 + a * a
        sq = sqrt(q)
        out.w = a / sq
        out.dw = c * s.du / (q * sq)
        return out
    ac = fabs(c)
    if ac == 0.0:
        out.w = 0.0
        out.dw = 0.0
        return out
    if p:
        one_minus = (1.0 - ac / p) + (ac / p) * s.gap
    else:
        one_minus = 1.0 - ac * s.u
    q = one_minus * (1.0 + ac * s.u)
    if q <= 0.0:
        out.w = copysign(INFINITY, a)
        out.dw = copysign(INFINITY, c)
        return out
    sq = sqrt(q)
    out.w = a / sq
    out.dw = c * s.du / (q * sq)
    return out


cdef void _gk15(int p, double c, bint lorentzian, double a, double b,
                double* est, double* err) noexcept nogil:
    cdef double center = 0.5 * (a + b)
    cdef double half = 0.5 * (b - a)
    cdef double fc = _w_state(p, c, lorentzian, center).w
    cdef double resk = fc * _WGK[7]
    cdef double resg = fc * _WG[3]
    cdef double dx, f1, f2
    cdef int j
    for j in range(7):
        dx = half * _XGK[j]
        f1 = _w_state(p, c, lorentzian, center - dx).w
        f2 = _w_state(p, c, lorentzian, center + dx).w
        resk += _WGK[j] * (f1 + f2)
        if j % 2:
            resg += _WG[j // 2] * (f1 + f2)
    est[0] = resk * half
    err[0] = fabs((resk - resg) * half)


cdef double _phi(int p, double c, bint lorentzian, double r, double tol,
                 long max_intervals) except? -1.0:
    cdef double total = 0.0
    cdef double a, b, est, err, local, mid
    cdef long cap = 64
    cdef long top = 0
    cdef long intervals = 1
    cdef double* stack
    cdef double* grown
    if r == 0.0 or c == 0.0:
        return 0.0
    stack = <double*> malloc(2 * cap * sizeof(double))
    if stack == NULL:
        raise MemoryError()
    stack[0] = 0.0
    stack[1] = r
    top = 1
    try:
        while top > 0:
            top -= 1
            a = stack[2 * top]
            b = stack[2 * top + 1]
            _gk15(p, c, lorentzian, a, b, &est, &err)
            local = tol * (b - a) / r
            if 50.0 * _EPS * fabs(est) > local:
                local = 50.0 * _EPS * fabs(est)
            if err <= local or intervals >= max_intervals:
                total += est
                continue
            if top + 2 > cap:
                cap *= 2
                grown = <double*> realloc(stack, 2 * cap * sizeof(double))
                if grown == NULL:
                    raise MemoryError()
                stack = grown
            mid = 0.5 * (a + b)
            stack[2 * top] = mid
            stack[2 * top + 1] = b
            stack[2 * top + 2] = a
            stack[2 * top + 3] = mid
            top += 2
            intervals += 1
    finally:
        free(stack)
    return total


def series_coefficients(int p):
    cdef double buf[N_SERIES]
    _fill_coefficients(p, buf)
    return tuple(buf[n] for n in range(N_SERIES))


def u_state(int p, double r):
    cdef UState s = _u_state(p, r)
    return s.u, s.gap, s.du


def u_profile(int p, double r):
    return _u_state(p, r).u


def sinh_power_integral(int p, double r):
    cdef double h
    if p == 0:
        return r
    if p == 1:
        h = sinh(0.5 * r)
        return 2.0 * h * h
    return _u_state(p, r).u * sinh(r) ** p


def w_state(int p, double c, bint lorentzian, double r):
    cdef WState s = _w_state(p, c, lorentzian, r)
    return s.w, s.dw


def w_value(int p, double c, bint lorentzian, double r):
    return _w_state(p, c, lorentzian, r).w


def phi_value(int p, double c, bint lorentzian, double r,
              double tol=QUAD_TOL, long max_intervals=QUAD_MAX_INTERVALS):
    return _phi(p, c, lorentzian, r, tol, max_intervals)

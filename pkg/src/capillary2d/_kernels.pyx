# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see ``_kernels_py.py`` for the reference twin."""

from array import array

from libc.math cimport sin, cos, sqrt, fabs, pow, NAN, INFINITY

XI_REGULAR = 0
XI_SQRT = 1
XI0_PARTS = 2
XI0_SQRT = 3
SLOPE_SQRT = 4

STATUS_END = 0
STATUS_VERTICAL = 1
STATUS_UNDERFLOW = 2
STATUS_MAX_STEPS = 3

cdef double[11] XGK = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
]
cdef double[11] WGK = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208745815833,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
]
cdef double[5] WG = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
]


cdef inline double _integrand(int kind, double x, double p0, double p1, double p2) nogil:
    cdef double sh, q, w2, t, half, sinc, ab, d
    if kind == 0:
        sh = sin(0.5 * x)
        q = 2.0 * (p0 + 2.0 * sh * sh)
        if q <= 0.0:
            return NAN
        return cos(x) / sqrt(q)
    elif kind == 1:
        w2 = x * x
        t = p0 + p1 * w2
        half = 0.5 * w2
        if half > 0.0:
            sinc = sin(half) / half
        else:
            sinc = 1.0
        ab = sin(0.5 * (t + p0)) * (0.5 * p1 * sinc)
        if ab <= 0.0:
            return NAN
        return cos(t) / sqrt(ab)
    elif kind == 2:
        d = (p0 + x) * (p1 - x)
        return sqrt(x) / (d * sqrt(d))
    elif kind == 3:
        w2 = x * x
        return -2.0 * (p2 + w2) / sqrt((p0 + w2) * (p1 - w2))
    else:
        w2 = x * x
        d = (p0 + w2) * (p1 - w2)
        return 2.0 / (d * sqrt(d))


def integrand(int kind, double x, double p0, double p1, double p2):
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown integrand kind {kind}")
    return _integrand(kind, x, p0, p1, p2)


cdef inline void _gk21(int kind, double p0, double p1, double p2, double a, double b,
                       double* value, double* err) nogil:
    cdef double centr = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double resk = _integrand(kind, centr, p0, p1, p2) * WGK[10]
    cdef double resg = 0.0
    cdef double dx, fsum
    cdef int j, jg, jk
    for j in range(5):
        jg = 2 * j + 1
        dx = hlgth * XGK[jg]
        fsum = _integrand(kind, centr - dx, p0, p1, p2) + _integrand(kind, centr + dx, p0, p1, p2)
        resg += WG[j] * fsum
        resk += WGK[jg] * fsum
    for j in range(5):
        jk = 2 * j
        dx = hlgth * XGK[jk]
        fsum = _integrand(kind, centr - dx, p0, p1, p2) + _integrand(kind, centr + dx, p0, p1, p2)
        resk += WGK[jk] * fsum
    value[0] = resk * hlgth
    err[0] = fabs((resk - resg) * hlgth)


def gk21(int kind, double p0, double p1, double p2, double a, double b):
    cdef double v, e
    _gk21(kind, p0, p1, p2, a, b, &v, &e)
    return v, e


cdef int _integrate(int kind, double p0, double p1, double p2, double a, double b,
                    double abs_tol, double rel_tol, int max_sub,
                    double* lo, double* hi, double* vals, double* errs,
                    double* out_total, double* out_err, int* out_n) nogil:
    cdef double v, e, v1, e1, v2, e2, total, total_err, worst, m
    cdef int n, i, k
    _gk21(kind, p0, p1, p2, a, b, &v, &e)
    lo[0] = a
    hi[0] = b
    vals[0] = v
    errs[0] = e
    total = v
    total_err = e
    n = 1
    while not (total_err <= max(abs_tol, rel_tol * fabs(total))):
        if total_err != total_err or n >= max_sub:
            out_total[0] = total
            out_err[0] = total_err
            out_n[0] = n
            return 0
        i = 0
        worst = errs[0]
        for k in range(1, n):
            if errs[k] > worst:
                worst = errs[k]
                i = k
        m = 0.5 * (lo[i] + hi[i])
        if not (min(lo[i], hi[i]) < m < max(lo[i], hi[i])):
            out_total[0] = total
            out_err[0] = total_err
            out_n[0] = n
            return 0
        _gk21(kind, p0, p1, p2, lo[i], m, &v1, &e1)
        _gk21(kind, p0, p1, p2, m, hi[i], &v2, &e2)
        lo[n] = m
        hi[n] = hi[i]
        vals[n] = v2
        errs[n] = e2
        hi[i] = m
        vals[i] = v1
        errs[i] = e1
        n += 1
        total = 0.0
        total_err = 0.0
        for k in range(n):
            total += vals[k]
            total_err += errs[k]
    out_total[0] = total
    out_err[0] = total_err
    out_n[0] = n
    return 1


def integrate(int kind, double p0, double p1, double p2, double a, double b,
              double abs_tol, double rel_tol, int max_sub):
    """Globally adaptive bisection; returns (value, error, panels, converged)."""
    if a == b:
        return 0.0, 0.0, 0, True
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown integrand kind {kind}")
    if max_sub < 1:
        max_sub = 1
    cdef double[::1] buf_lo = _buffer(max_sub)
    cdef double[::1] buf_hi = _buffer(max_sub)
    cdef double[::1] buf_v = _buffer(max_sub)
    cdef double[::1] buf_e = _buffer(max_sub)
    cdef double total, total_err
    cdef int n, ok
    with nogil:
        ok = _integrate(kind, p0, p1, p2, a, b, abs_tol, rel_tol, max_sub,
                        &buf_lo[0], &buf_hi[0], &buf_v[0], &buf_e[0], &total, &total_err, &n)
    return total, total_err, n, bool(ok)


def integrate_steps(int kind, double p0, double p1, double p2, nodes,
                    double abs_tol, double rel_tol, int max_sub):
    """Integrals over consecutive node intervals; returns (values, errors, converged)."""
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown integrand kind {kind}")
    if max_sub < 1:
        max_sub = 1
    cdef Py_ssize_t count = len(nodes)
    cdef double[::1] x = _buffer(max(count, 1))
    cdef Py_ssize_t k
    for k in range(count):
        x[k] = nodes[k]
    arr_v = _buffer(max(count - 1, 1))
    arr_e = _buffer(max(count - 1, 1))
    cdef double[::1] out_v = arr_v
    cdef double[::1] out_e = arr_e
    cdef double[::1] buf_lo = _buffer(max_sub)
    cdef double[::1] buf_hi = _buffer(max_sub)
    cdef double[::1] buf_v = _buffer(max_sub)
    cdef double[::1] buf_e = _buffer(max_sub)
    cdef double total, total_err
    cdef int n, ok = 1
    with nogil:
        for k in range(count - 1):
            if x[k] == x[k + 1]:
                out_v[k] = 0.0
                out_e[k] = 0.0
                continue
            if not _integrate(kind, p0, p1, p2, x[k], x[k + 1], abs_tol, rel_tol, max_sub,
                              &buf_lo[0], &buf_hi[0], &buf_v[0], &buf_e[0], &total, &total_err, &n):
                ok = 0
            out_v[k] = total
            out_e[k] = total_err
    if count < 2:
        return [], [], True
    return arr_v[:count - 1].tolist(), arr_e[:count - 1].tolist(), bool(ok)


cdef object _buffer(Py_ssize_t n):
    return array("d", [0.0]) * n


cdef inline void _rhs(double u, double v, double sign, double* kx, double* ku, double* kv) nogil:
    cdef double q = 1.0 - v * v
    cdef double r
    if q < 0.0:
        q = 0.0
    r = sign * sqrt(q)
    kx[0] = r
    ku[0] = v
    kv[0] = u * r


def arclength_run(double xi, double u, double v, double sign, double s, double s_end,
                  double h, double tol, double vertical_eps, double max_step, long max_steps):
    """Dormand-Prince 5(4) on d(xi, U, v)/ds = (r, v, U r), r = sign sqrt(1 - v^2).

    Returns (s, xi, U, v) sample lists, a status code and the last step size.
    Stops at s_end, or once 1 - |v| <= vertical_eps with |v| increasing.
    """
    ss = [s]
    xs = [xi]
    us = [u]
    vs = [v]
    cdef double k1x, k1u, k1v, k2x, k2u, k2v, k3x, k3u, k3v, k4x, k4u, k4v
    cdef double k5x, k5u, k5v, k6x, k6u, k6v, k7x, k7u, k7v
    cdef double xn, un, vn, ex, eu, ev, err, fac, rn, er
    cdef int status = STATUS_END
    cdef long steps = 0
    cdef long attempts = 0
    cdef bint last, vertical
    _rhs(u, v, sign, &k1x, &k1u, &k1v)
    while s < s_end:
        if steps >= max_steps or attempts >= 20 * max_steps:
            status = STATUS_MAX_STEPS
            break
        attempts += 1
        last = False
        if h > max_step:
            h = max_step
        if h >= s_end - s:
            h = s_end - s
            last = True
        if h <= 1e-14 * max(1.0, fabs(s)):
            status = STATUS_UNDERFLOW
            break
        _rhs(u + h * 0.2 * k1u, v + h * 0.2 * k1v, sign, &k2x, &k2u, &k2v)
        _rhs(u + h * (3.0 / 40.0 * k1u + 9.0 / 40.0 * k2u),
             v + h * (3.0 / 40.0 * k1v + 9.0 / 40.0 * k2v), sign, &k3x, &k3u, &k3v)
        _rhs(u + h * (44.0 / 45.0 * k1u - 56.0 / 15.0 * k2u + 32.0 / 9.0 * k3u),
             v + h * (44.0 / 45.0 * k1v - 56.0 / 15.0 * k2v + 32.0 / 9.0 * k3v), sign, &k4x, &k4u, &k4v)
        _rhs(u + h * (19372.0 / 6561.0 * k1u - 25360.0 / 2187.0 * k2u
                      + 64448.0 / 6561.0 * k3u - 212.0 / 729.0 * k4u),
             v + h * (19372.0 / 6561.0 * k1v - 25360.0 / 2187.0 * k2v
                      + 64448.0 / 6561.0 * k3v - 212.0 / 729.0 * k4v), sign, &k5x, &k5u, &k5v)
        _rhs(u + h * (9017.0 / 3168.0 * k1u - 355.0 / 33.0 * k2u + 46732.0 / 5247.0 * k3u
                      + 49.0 / 176.0 * k4u - 5103.0 / 18656.0 * k5u),
             v + h * (9017.0 / 3168.0 * k1v - 355.0 / 33.0 * k2v + 46732.0 / 5247.0 * k3v
                      + 49.0 / 176.0 * k4v - 5103.0 / 18656.0 * k5v), sign, &k6x, &k6u, &k6v)
        xn = xi + h * (35.0 / 384.0 * k1x + 500.0 / 1113.0 * k3x + 125.0 / 192.0 * k4x
                       - 2187.0 / 6784.0 * k5x + 11.0 / 84.0 * k6x)
        un = u + h * (35.0 / 384.0 * k1u + 500.0 / 1113.0 * k3u + 125.0 / 192.0 * k4u
                      - 2187.0 / 6784.0 * k5u + 11.0 / 84.0 * k6u)
        vn = v + h * (35.0 / 384.0 * k1v + 500.0 / 1113.0 * k3v + 125.0 / 192.0 * k4v
                      - 2187.0 / 6784.0 * k5v + 11.0 / 84.0 * k6v)
        if not (fabs(vn) <= 1.0) or xn != xn or un != un:
            h *= 0.5
            continue
        _rhs(un, vn, sign, &k7x, &k7u, &k7v)
        ex = h * (71.0 / 57600.0 * k1x - 71.0 / 16695.0 * k3x + 71.0 / 1920.0 * k4x
                  - 17253.0 / 339200.0 * k5x + 22.0 / 525.0 * k6x - 1.0 / 40.0 * k7x)
        eu = h * (71.0 / 57600.0 * k1u - 71.0 / 16695.0 * k3u + 71.0 / 1920.0 * k4u
                  - 17253.0 / 339200.0 * k5u + 22.0 / 525.0 * k6u - 1.0 / 40.0 * k7u)
        ev = h * (71.0 / 57600.0 * k1v - 71.0 / 16695.0 * k3v + 71.0 / 1920.0 * k4v
                  - 17253.0 / 339200.0 * k5v + 22.0 / 525.0 * k6v - 1.0 / 40.0 * k7v)
        # error induced in sqrt(1 - v^2), which dv amplifies by |v|/sqrt(1 - v^2)
        rn = 1.0 - vn * vn
        rn = sqrt(rn) if rn > 0.0 else 0.0
        if ev == 0.0:
            er = 0.0
        elif rn > 0.0:
            er = fabs(ev) * fabs(vn) / rn
        else:
            er = INFINITY
        err = max(
            max(fabs(ex) / (tol * (1.0 + max(fabs(xi), fabs(xn)))),
                fabs(eu) / (tol * (1.0 + max(fabs(u), fabs(un))))),
            max(fabs(ev) / (tol * (1.0 + max(fabs(v), fabs(vn)))),
                er / (tol * (1.0 + rn))),
        )
        if err <= 1.0:
            vertical = 1.0 - fabs(vn) <= vertical_eps and fabs(vn) > fabs(v)
            if last:
                s = s_end
            else:
                s = s + h
            xi = xn
            u = un
            v = vn
            k1x = k7x
            k1u = k7u
            k1v = k7v
            ss.append(s)
            xs.append(xi)
            us.append(u)
            vs.append(v)
            steps += 1
            if vertical:
                status = STATUS_VERTICAL
                break
            if err == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * pow(err, -0.2)))
            h *= fac
        else:
            h *= max(0.2, 0.9 * pow(err, -0.2))
    return ss, xs, us, vs, status, h

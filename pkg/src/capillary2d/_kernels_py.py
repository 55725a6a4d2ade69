"""Pure-Python inner loops.

Line-for-line twin of ``_kernels.pyx``; used when the compiled extension is
missing or ``CAPILLARY2D_PURE_PYTHON`` is set. Keep the two files in step:
``tests/test_kernels.py`` checks that they agree.
"""

import math

# integrand kinds
XI_REGULAR = 0  # cos t / sqrt(2 (delta + 2 sin^2(t/2)))
XI_SQRT = 1  # same, after t = t* + sigma w^2 at a root of c - cos t
XI0_PARTS = 2  # sqrt(x) / ((eps + x)(p - x))^{3/2}, x = t - s0
XI0_SQRT = 3  # -2 t / sqrt((eps + w^2)(p - w^2)), t = s0 + w^2
SLOPE_SQRT = 4  # 2 / ((eps + w^2)(p - w^2))^{3/2}

STATUS_END = 0
STATUS_VERTICAL = 1
STATUS_UNDERFLOW = 2
STATUS_MAX_STEPS = 3

_XGK = (
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
)
_WGK = (
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
)
_WG = (
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)


def integrand(kind, x, p0, p1, p2):
    if kind == XI_REGULAR:
        sh = math.sin(0.5 * x)
        q = 2.0 * (p0 + 2.0 * sh * sh)
        if q <= 0.0:
            return math.nan
        return math.cos(x) / math.sqrt(q)
    if kind == XI_SQRT:
        w2 = x * x
        t = p0 + p1 * w2
        half = 0.5 * w2
        sinc = math.sin(half) / half if half > 0.0 else 1.0
        ab = math.sin(0.5 * (t + p0)) * (0.5 * p1 * sinc)
        if ab <= 0.0:
            return math.nan
        return math.cos(t) / math.sqrt(ab)
    if kind == XI0_PARTS:
        d = (p0 + x) * (p1 - x)
        return math.sqrt(x) / (d * math.sqrt(d))
    if kind == XI0_SQRT:
        w2 = x * x
        return -2.0 * (p2 + w2) / math.sqrt((p0 + w2) * (p1 - w2))
    if kind == SLOPE_SQRT:
        w2 = x * x
        d = (p0 + w2) * (p1 - w2)
        return 2.0 / (d * math.sqrt(d))
    raise ValueError(f"unknown integrand kind {kind}")


def gk21(kind, p0, p1, p2, a, b):
    """One 21-point Kronrod panel; returns (value, |Kronrod - Gauss|)."""
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = integrand(kind, centr, p0, p1, p2)
    resk = fc * _WGK[10]
    resg = 0.0
    for j in range(5):
        jg = 2 * j + 1
        dx = hlgth * _XGK[jg]
        fsum = integrand(kind, centr - dx, p0, p1, p2) + integrand(kind, centr + dx, p0, p1, p2)
        resg += _WG[j] * fsum
        resk += _WGK[jg] * fsum
    for j in range(5):
        jk = 2 * j
        dx = hlgth * _XGK[jk]
        fsum = integrand(kind, centr - dx, p0, p1, p2) + integrand(kind, centr + dx, p0, p1, p2)
        resk += _WGK[jk] * fsum
    return resk * hlgth, abs((resk - resg) * hlgth)


def integrate(kind, p0, p1, p2, a, b, abs_tol, rel_tol, max_sub):
    """Globally adaptive bisection; returns (value, error, panels, converged)."""
    if a == b:
        return 0.0, 0.0, 0, True
    lo = [a]
    hi = [b]
    v, e = gk21(kind, p0, p1, p2, a, b)
    vals = [v]
    errs = [e]
    total = v
    total_err = e
    n = 1
    while not (total_err <= max(abs_tol, rel_tol * abs(total))):
        if total_err != total_err or n >= max_sub:
            return total, total_err, n, False
        i = 0
        worst = errs[0]
        for k in range(1, n):
            if errs[k] > worst:
                worst = errs[k]
                i = k
        m = 0.5 * (lo[i] + hi[i])
        if not (min(lo[i], hi[i]) < m < max(lo[i], hi[i])):
            return total, total_err, n, False
        v1, e1 = gk21(kind, p0, p1, p2, lo[i], m)
        v2, e2 = gk21(kind, p0, p1, p2, m, hi[i])
        lo.append(m)
        hi.append(hi[i])
        vals.append(v2)
        errs.append(e2)
        hi[i] = m
        vals[i] = v1
        errs[i] = e1
        n += 1
        total = 0.0
        total_err = 0.0
        for k in range(n):
            total += vals[k]
            total_err += errs[k]
    return total, total_err, n, True


def integrate_steps(kind, p0, p1, p2, nodes, abs_tol, rel_tol, max_sub):
    """Integrals over consecutive node intervals; returns (values, errors, converged)."""
    values = []
    errors = []
    ok = True
    for k in range(len(nodes) - 1):
        v, e, _, conv = integrate(kind, p0, p1, p2, nodes[k], nodes[k + 1], abs_tol, rel_tol, max_sub)
        values.append(v)
        errors.append(e)
        ok = ok and conv
    return values, errors, ok


def _rhs(u, v, sign):
    r = sign * math.sqrt(max(0.0, 1.0 - v * v))
    return r, v, u * r


def arclength_run(xi, u, v, sign, s, s_end, h, tol, vertical_eps, max_step, max_steps):
    """Dormand-Prince 5(4) on d(xi, U, v)/ds = (r, v, U r), r = sign sqrt(1 - v^2).

    Returns (s, xi, U, v) sample lists, a status code and the last step size.
    Stops at s_end, or once 1 - |v| <= vertical_eps with |v| increasing.
    """
    ss = [s]
    xs = [xi]
    us = [u]
    vs = [v]
    k1x, k1u, k1v = _rhs(u, v, sign)
    status = STATUS_END
    steps = 0
    attempts = 0
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
        if h <= 1e-14 * max(1.0, abs(s)):
            status = STATUS_UNDERFLOW
            break
        k2x, k2u, k2v = _rhs(u + h * 0.2 * k1u, v + h * 0.2 * k1v, sign)
        k3x, k3u, k3v = _rhs(u + h * (3.0 / 40.0 * k1u + 9.0 / 40.0 * k2u),
                             v + h * (3.0 / 40.0 * k1v + 9.0 / 40.0 * k2v), sign)
        k4x, k4u, k4v = _rhs(u + h * (44.0 / 45.0 * k1u - 56.0 / 15.0 * k2u + 32.0 / 9.0 * k3u),
                             v + h * (44.0 / 45.0 * k1v - 56.0 / 15.0 * k2v + 32.0 / 9.0 * k3v), sign)
        k5x, k5u, k5v = _rhs(u + h * (19372.0 / 6561.0 * k1u - 25360.0 / 2187.0 * k2u
                                      + 64448.0 / 6561.0 * k3u - 212.0 / 729.0 * k4u),
                             v + h * (19372.0 / 6561.0 * k1v - 25360.0 / 2187.0 * k2v
                                      + 64448.0 / 6561.0 * k3v - 212.0 / 729.0 * k4v), sign)
        k6x, k6u, k6v = _rhs(u + h * (9017.0 / 3168.0 * k1u - 355.0 / 33.0 * k2u + 46732.0 / 5247.0 * k3u
                                      + 49.0 / 176.0 * k4u - 5103.0 / 18656.0 * k5u),
                             v + h * (9017.0 / 3168.0 * k1v - 355.0 / 33.0 * k2v + 46732.0 / 5247.0 * k3v
                                      + 49.0 / 176.0 * k4v - 5103.0 / 18656.0 * k5v), sign)
        xn = xi + h * (35.0 / 384.0 * k1x + 500.0 / 1113.0 * k3x + 125.0 / 192.0 * k4x
                       - 2187.0 / 6784.0 * k5x + 11.0 / 84.0 * k6x)
        un = u + h * (35.0 / 384.0 * k1u + 500.0 / 1113.0 * k3u + 125.0 / 192.0 * k4u
                      - 2187.0 / 6784.0 * k5u + 11.0 / 84.0 * k6u)
        vn = v + h * (35.0 / 384.0 * k1v + 500.0 / 1113.0 * k3v + 125.0 / 192.0 * k4v
                      - 2187.0 / 6784.0 * k5v + 11.0 / 84.0 * k6v)
        if not (abs(vn) <= 1.0) or xn != xn or un != un:
            h *= 0.5
            continue
        k7x, k7u, k7v = _rhs(un, vn, sign)
        ex = h * (71.0 / 57600.0 * k1x - 71.0 / 16695.0 * k3x + 71.0 / 1920.0 * k4x
                  - 17253.0 / 339200.0 * k5x + 22.0 / 525.0 * k6x - 1.0 / 40.0 * k7x)
        eu = h * (71.0 / 57600.0 * k1u - 71.0 / 16695.0 * k3u + 71.0 / 1920.0 * k4u
                  - 17253.0 / 339200.0 * k5u + 22.0 / 525.0 * k6u - 1.0 / 40.0 * k7u)
        ev = h * (71.0 / 57600.0 * k1v - 71.0 / 16695.0 * k3v + 71.0 / 1920.0 * k4v
                  - 17253.0 / 339200.0 * k5v + 22.0 / 525.0 * k6v - 1.0 / 40.0 * k7v)
        # error induced in sqrt(1 - v^2), which dv amplifies by |v|/sqrt(1 - v^2)
        rn = math.sqrt(max(0.0, 1.0 - vn * vn))
        er = 0.0 if ev == 0.0 else (abs(ev) * abs(vn) / rn if rn > 0.0 else math.inf)
        err = max(
            abs(ex) / (tol * (1.0 + max(abs(xi), abs(xn)))),
            abs(eu) / (tol * (1.0 + max(abs(u), abs(un)))),
            abs(ev) / (tol * (1.0 + max(abs(v), abs(vn)))),
            er / (tol * (1.0 + rn)),
        )
        if err <= 1.0:
            vertical = 1.0 - abs(vn) <= vertical_eps and abs(vn) > abs(v)
            s = s_end if last else s + h
            xi, u, v = xn, un, vn
            k1x, k1u, k1v = k7x, k7u, k7v
            ss.append(s)
            xs.append(xi)
            us.append(u)
            vs.append(v)
            steps += 1
            if vertical:
                status = STATUS_VERTICAL
                break
            fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h *= fac
        else:
            h *= max(0.2, 0.9 * err ** -0.2)
    return ss, xs, us, vs, status, h

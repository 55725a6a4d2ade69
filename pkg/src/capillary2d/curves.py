"""Sampled solution curves for every regime.

Three construction routes:

* inclination quadrature (attracting and repelling families),
* the closed form of the critical curve ``U = 2 sin(psi/2)``,
* adaptive integration of the arclength system
  ``xi' = sqrt(1 - v^2), U' = v, v' = U sqrt(1 - v^2)``.

Graph curves come back normalized: an attracting curve has its minimum at
``xi = 0``, a repelling curve crosses the axis at the origin, and the critical
curve passes through its anchor ``(xi2, psi2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .core import (HALF_PI, CurvePoint, FamilyParameter, Regime, Route, SampledCurve,
                   arclength_invariant)
from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, cumulative_delta_xi, delta_xi


@dataclass(frozen=True)
class CriticalAnchor:
    """Point ``xi2`` at which the critical curve has inclination ``psi2``."""

    psi2: float = HALF_PI
    xi2: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.psi2 < math.pi:
            raise DomainError(f"anchor inclination must lie in (0, pi), got {self.psi2!r}")


@dataclass(frozen=True)
class IntegratorSettings:
    """Controls for :func:`integrate_arclength`.

    ``branch_sign`` multiplies the sign of ``sqrt(1 - v^2)`` at each vertical point
    when ``continue_past_vertical`` is set: ``-1`` follows the analytic
    continuation onto the overhanging branch, ``+1`` keeps the sign, which
    selects the vertical straight-line solution ``U_s = +-1``.
    """

    step: float = 1e-3
    tol: float = 1e-10
    vertical_eps: float = 1e-9
    continue_past_vertical: bool = False
    branch_sign: int = -1
    max_step: float = 0.05
    max_steps: int = 1_000_000

    def __post_init__(self):
        if not self.step > 0 or not self.tol > 0 or not self.max_step > 0:
            raise DomainError("step, max_step and tol must be positive")
        if not 0.0 < self.vertical_eps < 1.0:
            raise DomainError("vertical_eps must lie in (0, 1)")
        if self.branch_sign not in (-1, 1):
            raise DomainError("branch_sign must be -1 or +1")


DEFAULT_INTEGRATOR = IntegratorSettings()


def curvature_at(point: CurvePoint) -> float:
    """Planar curvature; in universal coordinates it equals the height."""
    return point.height


def _check_samples(n: int) -> int:
    n = int(n)
    if n < 3:
        raise DomainError(f"need at least 3 samples, got {n}")
    return n


def _symmetric_grid(n: int, half_width: float):
    """Non-negative half of a uniform grid of ``n`` points on ``[-w, w]``."""
    if n % 2:
        return np.linspace(0.0, half_width, (n + 1) // 2)
    k = np.arange(n // 2)
    return half_width * (2 * k + 1) / (n - 1)


def attracting_curve(u0: float, n: int = 201,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> SampledCurve:
    """Attracting curve with minimum ``(0, u0)``, sampled uniformly in ``psi`` on ``[-pi/2, pi/2]``."""
    n = _check_samples(n)
    family = FamilyParameter.attracting(u0)
    half = _symmetric_grid(n, HALF_PI)
    nodes = half if half[0] == 0.0 else np.concatenate([[0.0], half])
    xi, err = cumulative_delta_xi(family, nodes, settings)
    if half[0] != 0.0:
        xi, err = xi[1:], err[1:]
    top = math.sqrt(u0 * u0 + 2.0)
    right = []
    for psi, x in zip(half, xi):
        height = top if psi == HALF_PI else family.height(psi)
        right.append(CurvePoint.from_psi(x, height, psi))
    left = [p.reflected_xi() for p in reversed(right) if p.psi != 0.0]
    meta = {"spacing": "uniform-psi", "psi_margin": 0.0,
            "quadrature_error": float(err[-1]) if len(err) else 0.0}
    return SampledCurve(tuple(left + right), family, Route.PSI_QUADRATURE, True, meta)


def critical_xi(psi: float, anchor: CriticalAnchor = CriticalAnchor()) -> float:
    """Closed-form position of the critical curve at inclination ``psi`` in ``(0, pi)``."""
    return (anchor.xi2 + math.log(math.tan(0.25 * psi) / math.tan(0.25 * anchor.psi2))
            + 2.0 * (math.cos(0.5 * psi) - math.cos(0.5 * anchor.psi2)))


def critical_point(psi: float, anchor: CriticalAnchor = CriticalAnchor()) -> CurvePoint:
    if not 0.0 < psi < math.pi:
        raise DomainError(f"critical curve inclination must lie in (0, pi), got {psi!r}")
    return CurvePoint.from_psi(critical_xi(psi, anchor), 2.0 * math.sin(0.5 * psi), psi)


def critical_curve(anchor: CriticalAnchor = CriticalAnchor(), n: int = 201,
                   settings: QuadratureSettings = DEFAULT_SETTINGS, psi_min: float = None) -> SampledCurve:
    """The zero-force curve ``U = 2 sin(psi/2)`` through the anchor.

    Sampled uniformly in ``psi`` on ``[psi_min, min(psi2, pi/2)]``; ``psi_min``
    defaults to one grid spacing above zero, where the curve has decayed
    towards the axis at ``xi -> -infinity``.
    """
    n = _check_samples(n)
    psi_max = min(anchor.psi2, HALF_PI)
    if psi_min is None:
        psi_min = psi_max / n
    if not 0.0 < psi_min < psi_max:
        raise DomainError(f"psi_min must lie in (0, {psi_max!r}), got {psi_min!r}")
    grid = np.linspace(psi_min, psi_max, n)
    grid[-1] = psi_max
    points = tuple(critical_point(p, anchor) for p in grid)
    meta = {"spacing": "uniform-psi", "anchor": {"psi2": anchor.psi2, "xi2": anchor.xi2}}
    return SampledCurve(points, FamilyParameter.critical(), Route.CLOSED_FORM, True, meta)


def repelling_curve(psi0: float, n: int = 201,
                    settings: QuadratureSettings = DEFAULT_SETTINGS) -> SampledCurve:
    """Repelling curve through the origin at inclination ``psi0``, between its vertical endpoints.

    The half with ``U > 0`` is integrated from the axis crossing up to
    ``psi = pi/2``; the other half is its image under ``(xi, U) -> (-xi, -U)``.
    A negative ``psi0`` gives the mirror image in the vertical axis.
    """
    n = _check_samples(n)
    family = FamilyParameter.repelling(psi0)
    root = abs(family.psi0)
    m_up = n // 2 + 1
    m_lo = n - m_up
    up_grid = np.linspace(root, HALF_PI, m_up)
    up_grid[-1] = HALF_PI
    lo_grid = root + (HALF_PI - root) * np.arange(1, m_lo + 1) / m_lo
    lo_grid[-1] = HALF_PI
    pos = FamilyParameter.repelling(root)

    def half(grid):
        xi, err = cumulative_delta_xi(pos, grid, settings)
        pts = []
        for psi, x in zip(grid, xi):
            height = pos.u0 if psi == HALF_PI else pos.height(psi)
            pts.append(CurvePoint.from_psi(x, height, psi))
        return pts, float(err[-1])

    upper, err_up = half(up_grid)
    if m_lo == m_up - 1:
        lower_src, err_lo = upper[1:], err_up
    else:
        lower_src, err_lo = half(np.concatenate([[root], lo_grid]))
        lower_src = lower_src[1:]
    lower = [CurvePoint(-p.xi, -p.height, p.psi, p.v) for p in reversed(lower_src)]
    points = lower + upper
    if family.psi0 < 0:
        points = [p.reflected_xi() for p in reversed(points)]
    meta = {"spacing": "uniform-psi", "psi_margin": 0.0, "xi0": upper[-1].xi,
            "quadrature_error": max(err_up, err_lo)}
    return SampledCurve(tuple(points), family, Route.PSI_QUADRATURE, True, meta)


def curve_point(family: FamilyParameter, psi: float, branch: int = 1,
                anchor: CriticalAnchor = CriticalAnchor(),
                settings: QuadratureSettings = DEFAULT_SETTINGS) -> CurvePoint:
    """Point of the normalized curve of ``family`` with inclination ``psi``.

    ``branch`` is the sign of the height; it only matters for repelling
    families, where every admissible inclination occurs once with ``U > 0``
    and once with ``U < 0``.
    """
    if family.regime is Regime.ATTRACTING:
        return CurvePoint.from_psi(delta_xi(family, 0.0, psi, settings), family.height(psi), psi)
    if family.regime is Regime.CRITICAL:
        return critical_point(psi, anchor)
    if family.regime is Regime.REPELLING:
        mirror = -1.0 if family.psi0 < 0 else 1.0
        pos = FamilyParameter.repelling(abs(family.psi0))
        q = mirror * psi
        x = delta_xi(pos, abs(family.psi0), q, settings)
        height = pos.height(q)
        if branch < 0:
            x, height = -x, -height
        return CurvePoint.from_psi(mirror * x, height, psi)
    raise DomainError("no graph solutions for this family")


_STATUS_TEXT = {kernels.STATUS_END: "s_max", kernels.STATUS_VERTICAL: "vertical"}


def _run(xi, u, v, sign, s, s_end, h, settings):
    out = kernels.arclength_run(float(xi), float(u), float(v), float(sign), float(s), float(s_end),
                                float(h), settings.tol, settings.vertical_eps, settings.max_step,
                                int(settings.max_steps))
    ss, xs, us, vs, status, h = out
    if status == kernels.STATUS_UNDERFLOW:
        raise ConvergenceError(f"arclength step underflow at s = {ss[-1]!r}")
    if status == kernels.STATUS_MAX_STEPS:
        raise ConvergenceError(f"arclength integration exceeded {settings.max_steps} steps")
    return ss, xs, us, vs, status, h


def integrate_arclength(start: CurvePoint, s_max: float,
                        settings: IntegratorSettings = DEFAULT_INTEGRATOR) -> SampledCurve:
    """Integrate the arclength system forward from ``start`` for at most ``s_max``.

    Stops at a vertical point (``1 - |v| <= vertical_eps``) unless
    ``continue_past_vertical`` is set, in which case the branch is switched at
    every vertical point met before ``s_max`` (see :class:`IntegratorSettings`)
    and the result is flagged non-graph.  The family constant is taken from
    the start point.
    """
    v = float(start.v)
    if not abs(v) <= 1.0:
        raise DomainError(f"|v| must not exceed 1, got {v!r}")
    if not s_max > 0:
        raise DomainError(f"s_max must be positive, got {s_max!r}")
    s0 = 0.0 if start.s is None else float(start.s)
    sign = 1.0 if math.cos(start.psi) >= 0.0 else -1.0
    family = FamilyParameter.from_c(arclength_invariant(start))
    s_end = s0 + float(s_max)

    segments = []
    switches = []
    xi, u, s = start.xi, start.height, s0
    if 1.0 - abs(v) <= settings.vertical_eps:
        segments.append(([s], [xi], [u], [v], sign))
        termination = "vertical"
    else:
        ss, xs, us, vs, status, _ = _run(xi, u, v, sign, s, s_end, settings.step, settings)
        segments.append((ss, xs, us, vs, sign))
        termination = _STATUS_TEXT[status]
        xi, u, v, s = xs[-1], us[-1], vs[-1], ss[-1]
    budget = settings.max_steps
    while termination == "vertical" and settings.continue_past_vertical and s < s_end:
        budget -= len(segments[-1][0])
        if budget <= 0:
            raise ConvergenceError(f"arclength integration exceeded {settings.max_steps} steps")
        switches.append(s)
        if settings.branch_sign > 0:
            v = math.copysign(1.0, v)
        else:
            # hop to the mirror inclination on the far side of the vertical
            # point; xi is unchanged to second order, U keeps the invariant
            r = math.sqrt(max(0.0, 1.0 - v * v))
            u_new = math.copysign(math.sqrt(max(0.0, u * u + 4.0 * sign * r)), u)
            s = s + max(0.0, (u_new - u) / v)
            u = u_new
        sign *= settings.branch_sign
        ss, xs, us, vs, status, _ = _run(xi, u, v, sign, s, max(s_end, s), settings.step, settings)
        segments.append((ss, xs, us, vs, sign))
        termination = _STATUS_TEXT[status]
        xi, u, v, s = xs[-1], us[-1], vs[-1], ss[-1]

    points = []
    for ss, xs, us, vs, sg in segments:
        points.extend(CurvePoint.from_v(x, u, w, s, branch=sg) for s, x, u, w in zip(ss, xs, us, vs))
    meta = {"spacing": "adaptive-s", "termination": termination, "non_graph": bool(switches),
            "branch_s": switches[0] if switches else None, "branch_points": switches,
            "s_max": float(s_max), "c_start": arclength_invariant(start)}
    return SampledCurve(tuple(points), family, Route.ARCLENGTH_ODE, False, meta)


def integrate_arclength_both(start: CurvePoint, s_back: float, s_forward: float,
                             settings: IntegratorSettings = DEFAULT_INTEGRATOR) -> SampledCurve:
    """Arclength curve through ``start`` in both directions, ordered by ``s``.

    The backward half is computed forward from the mirrored state
    ``(-xi, U, -v)`` and mapped back, using that ``(xi, U, v)(s)`` solves the
    system iff ``(-xi, U, -v)(-s)`` does.
    """
    s0 = 0.0 if start.s is None else float(start.s)
    base = CurvePoint(start.xi, start.height, start.psi, start.v, s0)
    fwd = integrate_arclength(base, s_forward, settings)
    mirrored = CurvePoint(-base.xi, base.height, -base.psi, -base.v, -s0)
    back = integrate_arclength(mirrored, s_back, settings)
    back_pts = [CurvePoint(-p.xi, p.height, -p.psi, -p.v, -p.s) for p in reversed(back.points[1:])]
    meta = dict(fwd.metadata)
    meta["termination"] = (back.metadata["termination"], fwd.metadata["termination"])
    meta["non_graph"] = bool(fwd.metadata["non_graph"] or back.metadata["non_graph"])
    return SampledCurve(tuple(back_pts) + fwd.points, fwd.family, Route.ARCLENGTH_ODE,
                        False, meta)

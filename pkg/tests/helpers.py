"""Shared test utilities: comparison of an arclength-integrated curve with the quadrature route."""

import math

from capillary2d import (CriticalAnchor, CurvePoint, FamilyParameter, IntegratorSettings, Regime,
                         critical_point, curve_point, integrate_arclength)


def psi_from_sample(family: FamilyParameter, p: CurvePoint) -> float:
    """Inclination of a graph sample, read from whichever of v and U conditions xi(psi) better.

    An error dv moves xi(psi) by about dv / U, an error dU by about dU cot psi.
    """
    cos_v = math.sqrt(max(0.0, 1.0 - p.v * p.v))
    if abs(p.height) * cos_v >= abs(p.v):
        return math.asin(p.v)
    cos_psi = min(1.0, max(-1.0, family.c - 0.5 * p.height * p.height))
    return math.copysign(math.acos(max(cos_psi, 0.0)), p.v)


def ode_start(family: FamilyParameter, anchor: CriticalAnchor = CriticalAnchor(), psi_start=None):
    """A graph point far along the curve from which forward integration sweeps most of it."""
    if family.regime is Regime.ATTRACTING:
        psi = -1.2 if psi_start is None else psi_start
        return curve_point(family, psi)
    if family.regime is Regime.REPELLING:
        psi = 1.3 if psi_start is None else psi_start
        if family.psi0 > 0:
            return curve_point(family, psi, branch=-1)
        return curve_point(family, -psi, branch=1)
    return critical_point(0.05 if psi_start is None else psi_start, anchor)


def cross_route_error(family: FamilyParameter, anchor: CriticalAnchor = CriticalAnchor(),
                      psi_start=None, settings: IntegratorSettings = IntegratorSettings()):
    """Max |xi| and |U| mismatch between ODE samples and the quadrature curve; also the sample count."""
    start = ode_start(family, anchor, psi_start)
    start = CurvePoint(start.xi, start.height, start.psi, start.v, 0.0)
    curve = integrate_arclength(start, 20.0, settings)
    worst_xi = worst_u = 0.0
    for p in curve.points:
        psi = psi_from_sample(family, p)
        branch = 1 if p.height >= 0 else -1
        if family.regime is Regime.REPELLING:
            root = abs(family.psi0)
            psi = math.copysign(max(abs(psi), root), psi if psi != 0 else family.psi0)
        if family.regime is Regime.CRITICAL:
            ref = critical_point(psi, anchor)
        else:
            ref = curve_point(family, psi, branch)
        worst_xi = max(worst_xi, abs(ref.xi - p.xi))
        worst_u = max(worst_u, abs(ref.height - p.height))
    return worst_xi, worst_u, len(curve.points)

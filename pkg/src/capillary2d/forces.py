"""Plate forces, plate geometry on a solution curve, and the inverse plate problem.

Two vertical plates cut one solution curve.  The plate on the left bounds the
curve from the left, the plate on the right from the right, and the contact
angle ``gamma`` of each is measured inside the liquid on the face turned towards
the other plate.  With that convention

    right plate: psi = pi/2 - gamma        left plate: psi = gamma - pi/2,

so a perfectly wetting plate (``gamma = 0``) is met vertically with the liquid
climbing it.

Forces are normalized by the surface tension and reported per unit plate
length: ``F = u0^2`` for an attracting family and ``F = -2 (1 - cos psi0)`` for
a repelling one.  The sign only distinguishes the two cases; see
:attr:`ForceResult.magnitude`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .core import HALF_PI, FamilyParameter, PhysicalScale, Regime
from .curves import CriticalAnchor, curve_point
from .errors import DomainError, InfeasibleConfigurationError, NoSolutionError
from .quadrature import QuadratureSettings

# tighter than the library default so that the inverse map is smooth to ~1e-12
SOLVER_QUADRATURE = QuadratureSettings(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=4000)


class PlateSide(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class PlateConfig:
    """Contact angles of two plates and, for inverse problems, their gap."""

    gamma1: float
    gamma2: float
    side1: PlateSide = PlateSide.LEFT
    side2: PlateSide = PlateSide.RIGHT
    separation: Optional[float] = None

    def __post_init__(self):
        for g in (self.gamma1, self.gamma2):
            if not 0.0 <= g <= math.pi:
                raise DomainError(f"contact angle {g!r} outside [0, pi]")
        object.__setattr__(self, "side1", PlateSide(self.side1))
        object.__setattr__(self, "side2", PlateSide(self.side2))
        if self.side1 == self.side2:
            raise DomainError("the two plates must lie on opposite sides of the curve")
        if self.separation is not None and not self.separation >= 0.0:
            raise DomainError(f"separation must be non-negative, got {self.separation!r}")

    @property
    def left_gamma(self) -> float:
        return self.gamma1 if self.side1 is PlateSide.LEFT else self.gamma2

    @property
    def right_gamma(self) -> float:
        return self.gamma2 if self.side1 is PlateSide.LEFT else self.gamma1

    def inclinations(self) -> Tuple[float, float]:
        """``(psi_left, psi_right)``."""
        return (plate_inclination(self.left_gamma, PlateSide.LEFT),
                plate_inclination(self.right_gamma, PlateSide.RIGHT))


@dataclass(frozen=True)
class ForceResult:
    f: float
    family: FamilyParameter
    dimensional_per_length: Optional[float] = None

    @property
    def magnitude(self) -> float:
        return abs(self.f)

    @property
    def kind(self) -> str:
        if self.f > 0:
            return "attracting"
        return "repelling" if self.f < 0 else "neutral"


def _dimensional(f: float, scale) -> Optional[float]:
    if scale is None:
        return None
    sigma = scale.sigma if isinstance(scale, PhysicalScale) else float(scale)
    if sigma is None:
        return None
    return sigma * f


def attracting_force(u0: float, scale: Optional[PhysicalScale] = None) -> ForceResult:
    """``F = u0^2``; ``u0 = 0`` is the critical family with zero force.

    ``scale`` may be a :class:`PhysicalScale` carrying ``sigma``, or ``sigma``
    itself, in which case ``sigma * F`` is attached.
    """
    if not (u0 >= 0.0 and math.isfinite(u0)):
        raise DomainError(f"u0 must be a finite non-negative number, got {u0!r}")
    family = FamilyParameter.critical() if u0 == 0.0 else FamilyParameter.attracting(u0)
    f = u0 * u0
    return ForceResult(f, family, _dimensional(f, scale))


def repelling_force(psi0: float, scale: Optional[PhysicalScale] = None) -> ForceResult:
    """``F = -2 (1 - cos psi0) = -4 sin^2(psi0/2)`` for ``|psi0| < pi/2``."""
    if not abs(psi0) < HALF_PI:
        raise DomainError(f"|psi0| must be below pi/2, got {psi0!r}")
    if psi0 == 0.0:
        return ForceResult(0.0, FamilyParameter.critical(), _dimensional(0.0, scale))
    return force_of(FamilyParameter.repelling(psi0), scale)


def force_of(family: FamilyParameter, scale: Optional[PhysicalScale] = None) -> ForceResult:
    if family.regime is Regime.ATTRACTING:
        return ForceResult(family.u0 * family.u0, family, _dimensional(family.u0 * family.u0, scale))
    if family.regime is Regime.REPELLING:
        # 2 (c - 1) with c - 1 held without cancellation
        f = 2.0 * family.delta
        return ForceResult(f, family, _dimensional(f, scale))
    if family.regime is Regime.CRITICAL:
        return ForceResult(0.0, family, _dimensional(0.0, scale))
    raise DomainError("no plate force without graph solutions")


def plate_inclination(gamma: float, side) -> float:
    """Inclination of the curve where it meets a plate with contact angle ``gamma``."""
    if not 0.0 <= gamma <= math.pi:
        raise DomainError(f"contact angle {gamma!r} outside [0, pi]")
    side = PlateSide(side)
    return HALF_PI - gamma if side is PlateSide.RIGHT else gamma - HALF_PI


@dataclass(frozen=True)
class PlateGeometry:
    """Where two plates cut a normalized curve, and the force between them."""

    separation: float
    xi_left: float
    xi_right: float
    height_left: float
    height_right: float
    psi_left: float
    psi_right: float
    force: ForceResult


def _infeasible(msg):
    raise InfeasibleConfigurationError(msg)


def _branches(family: FamilyParameter, psi_l: float, psi_r: float) -> Tuple[int, int]:
    """Height signs of the two plate points, or raise when not attainable."""
    reg = family.regime
    if reg is Regime.ATTRACTING:
        if psi_l > psi_r:
            _infeasible(f"left plate inclination {psi_l!r} exceeds right plate inclination {psi_r!r}")
        return 1, 1
    if reg is Regime.CRITICAL:
        if not (0.0 < psi_l < psi_r or psi_l < psi_r < 0.0):
            _infeasible("on the critical curve both plate inclinations need one strict sign")
        return 1, 1
    if reg is Regime.REPELLING:
        root = family.psi0
        if root > 0 and psi_l >= root and psi_r >= root:
            return -1, 1
        if root < 0 and psi_l <= root and psi_r <= root:
            return 1, -1
        _infeasible(f"plate inclinations ({psi_l!r}, {psi_r!r}) not attained on the repelling "
                    f"curve crossing the axis at {root!r}")
    _infeasible("no graph solutions for this family")


def plate_separation(family: FamilyParameter, config: PlateConfig,
                     settings: QuadratureSettings = SOLVER_QUADRATURE,
                     scale: Optional[PhysicalScale] = None) -> PlateGeometry:
    """Gap between the two plates on the normalized curve of ``family``.

    The force comes from the family alone; the angles only decide where the
    plates sit.  The critical curve is used with its default anchor and only
    needs ``psi_left < psi_right`` with a common sign.
    """
    psi_l, psi_r = config.inclinations()
    b_l, b_r = _branches(family, psi_l, psi_r)
    if family.regime is Regime.CRITICAL and psi_l < 0:
        # mirror image of the standard critical curve
        left = curve_point(family, -psi_l, 1, CriticalAnchor(), settings).reflected_xi()
        right = curve_point(family, -psi_r, 1, CriticalAnchor(), settings).reflected_xi()
    else:
        left = curve_point(family, psi_l, b_l, CriticalAnchor(), settings)
        right = curve_point(family, psi_r, b_r, CriticalAnchor(), settings)
    if family.regime is Regime.ATTRACTING and psi_l == psi_r:
        sep = 0.0
    else:
        sep = right.xi - left.xi
    return PlateGeometry(sep, left.xi, right.xi, left.height, right.height, psi_l, psi_r,
                         force_of(family, scale))


@dataclass(frozen=True)
class PlateSolution:
    family: FamilyParameter
    force: ForceResult
    geometry: PlateGeometry
    alternatives: tuple = field(default_factory=tuple)


def _bisect(fun, lo, hi, flo, fhi, target):
    """Bisection on ``fun(x) - target`` over ``[lo, hi]`` down to adjacent floats.

    Near a vertical plate the gap can move by 1e-8 per ulp of the parameter,
    so stopping any earlier would cost accuracy in the gap itself.
    """
    for _ in range(2100):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = fun(mid) - target
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo if abs(flo) <= abs(fhi) else hi


def _scan(make_family, params, config, settings, target):
    seps = []
    for p in params:
        try:
            seps.append(plate_separation(make_family(p), config, settings).separation)
        except InfeasibleConfigurationError:
            seps.append(math.nan)
    seps = np.array(seps)
    roots = []
    for k in range(len(params) - 1):
        a, b = seps[k] - target, seps[k + 1] - target
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if a == 0.0:
            roots.append(params[k])
        elif a * b < 0.0:
            def fun(p):
                return plate_separation(make_family(p), config, settings).separation
            roots.append(_bisect(fun, params[k], params[k + 1], a, b, target))
    if len(params) and seps[-1] == target:
        roots.append(params[-1])
    finite = seps[np.isfinite(seps)]
    attainable = (float(finite.min()), float(finite.max())) if finite.size else None
    return roots, attainable


def solve_plates(config: PlateConfig, regime="attracting", samples: int = 64,
                 settings: QuadratureSettings = SOLVER_QUADRATURE,
                 scale: Optional[PhysicalScale] = None,
                 u0_range: Tuple[float, float] = (1e-6, 1e3),
                 psi0_decades: float = 10.0) -> PlateSolution:
    """Find the family whose plate gap equals ``config.separation``.

    The family parameter (``u0`` or ``psi0``) is scanned on a logarithmic grid
    of ``samples`` points; every sign change of ``gap - separation`` is refined
    by bisection.  The root closest to the middle of the scan is returned and
    the others are listed in ``alternatives``.  Raises
    :class:`NoSolutionError` with the scanned range of gaps when none exists.
    """
    target = config.separation
    if target is None or not target > 0.0:
        raise DomainError("solve_plates needs a positive separation in the configuration")
    regime = Regime(regime)
    psi_l, psi_r = config.inclinations()
    if regime is Regime.ATTRACTING:
        if psi_l > psi_r:
            _infeasible(f"left plate inclination {psi_l!r} exceeds right plate inclination {psi_r!r}")
        lo, hi = u0_range
        if not 0.0 < lo < hi:
            raise DomainError(f"bad u0 scan range {u0_range!r}")
        grid = np.exp(np.linspace(math.log(lo), math.log(hi), samples))
        grid[0], grid[-1] = lo, hi

        def make(u0):
            return FamilyParameter.attracting(u0)
    elif regime is Regime.REPELLING:
        if psi_l > 0 and psi_r > 0:
            cap, sign = min(psi_l, psi_r), 1.0
        elif psi_l < 0 and psi_r < 0:
            cap, sign = min(-psi_l, -psi_r), -1.0
        else:
            _infeasible(f"plate inclinations ({psi_l!r}, {psi_r!r}) fit no repelling curve")
        cap = min(cap, HALF_PI * (1.0 - 1e-12))
        grid = np.exp(np.linspace(math.log(cap) - psi0_decades * math.log(10.0), math.log(cap), samples))
        # the gap can change quickly as psi0 approaches the cap, so crowd samples there
        near_cap = cap * (1.0 - np.ldexp(1.0, -np.arange(1, 48)))
        grid = np.unique(np.concatenate([grid[:-1], near_cap, [cap]]))

        def make(psi0):
            return FamilyParameter.repelling(sign * psi0)
    else:
        raise DomainError(f"solve_plates supports attracting and repelling regimes, not {regime.value}")

    roots, attainable = _scan(make, [float(x) for x in grid], config, settings, target)
    if not roots:
        raise NoSolutionError(
            f"no {regime.value} family gives separation {target!r}; scanned separations span "
            f"{attainable!r}", attainable=attainable)
    mid = 0.5 * (math.log(grid[0]) + math.log(grid[-1]))
    roots.sort(key=lambda p: abs(math.log(p) - mid))
    solutions = []
    for p in roots:
        family = make(p)
        geom = plate_separation(family, config, settings, scale)
        solutions.append(PlateSolution(family, geom.force, geom))
    best = solutions[0]
    return PlateSolution(best.family, best.force, best.geometry, tuple(solutions[1:]))

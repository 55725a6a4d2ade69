"""Domain types, the first integral, regime classification and unit conversion.

All quantities are in the universal coordinates ``xi = sqrt(kappa) x``,
``U = sqrt(kappa) u``, in which a graph solution ``U(xi)`` with inclination
``psi`` satisfies ``(sin psi)_xi = U`` and ``U_xi = tan psi``, and carries the
first integral ``U^2/2 + cos psi = c``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError

HALF_PI = 0.5 * math.pi

#: |c - 1| at or below this classifies as critical.
CRITICAL_TOL = 1e-12

# slack on |psi| <= pi/2 for values produced by floating-point arithmetic
_ANGLE_SLACK = 1e-12


class Regime(str, enum.Enum):
    NO_GRAPH_SOLUTION = "no-graph-solution"
    REPELLING = "repelling"
    CRITICAL = "critical"
    ATTRACTING = "attracting"


class Route(str, enum.Enum):
    """How a sampled curve was constructed."""

    PSI_QUADRATURE = "psi-quadrature"
    CLOSED_FORM = "closed-form"
    ARCLENGTH_ODE = "arclength-ode"


@dataclass(frozen=True)
class CurvePoint:
    """One sample ``(xi, U, psi, v = sin psi, s)`` of a solution curve.

    Use :meth:`from_psi` or :meth:`from_v` so that ``psi`` and ``v`` stay
    consistent; the raw constructor trusts its arguments.
    """

    xi: float
    height: float
    psi: float
    v: float
    s: Optional[float] = None

    @classmethod
    def from_psi(cls, xi: float, height: float, psi: float, s: Optional[float] = None) -> "CurvePoint":
        return cls(float(xi), float(height), float(psi), math.sin(psi), None if s is None else float(s))

    @classmethod
    def from_v(cls, xi: float, height: float, v: float, s: Optional[float] = None,
               branch: float = 1.0) -> "CurvePoint":
        """Build from ``v``; ``branch`` is the sign of ``cos psi`` (``-1`` past a vertical point)."""
        if not abs(v) <= 1.0:
            raise DomainError(f"|v| must not exceed 1, got {v!r}")
        cos_psi = math.copysign(math.sqrt(max(0.0, 1.0 - v * v)), branch)
        return cls(float(xi), float(height), math.atan2(v, cos_psi), float(v), None if s is None else float(s))

    def translated(self, dxi: float) -> "CurvePoint":
        return replace(self, xi=self.xi + dxi)

    def reflected_xi(self) -> "CurvePoint":
        """Mirror in the vertical axis: ``(xi, U, psi) -> (-xi, U, -psi)``."""
        return CurvePoint(-self.xi, self.height, -self.psi, -self.v, self.s)

    def reflected_height(self) -> "CurvePoint":
        """Mirror in the horizontal axis: ``(xi, U, psi) -> (xi, -U, -psi)``."""
        return CurvePoint(self.xi, -self.height, -self.psi, -self.v, self.s)


def first_integral(point: CurvePoint) -> float:
    """Return ``U^2/2 + cos psi`` for a point of a graph solution."""
    if not abs(point.psi) <= HALF_PI + _ANGLE_SLACK:
        raise DomainError(f"inclination {point.psi!r} outside [-pi/2, pi/2]")
    return 0.5 * point.height * point.height + math.cos(point.psi)


def arclength_invariant(point: CurvePoint) -> float:
    """``U^2/2 + cos psi`` written with ``cos psi`` taken from ``v`` and the branch of ``psi``.

    On graph points this equals :func:`first_integral`; it stays meaningful past
    a vertical point where ``cos psi < 0``.
    """
    cos_psi = math.copysign(math.sqrt(max(0.0, 1.0 - point.v * point.v)), math.cos(point.psi))
    return 0.5 * point.height * point.height + cos_psi


def classify(c: float) -> Regime:
    """Regime of the family ``U^2/2 + cos psi = c``."""
    if not math.isfinite(c):
        raise DomainError(f"family constant must be finite, got {c!r}")
    if abs(c - 1.0) <= CRITICAL_TOL:
        return Regime.CRITICAL
    if c <= 0.0:
        return Regime.NO_GRAPH_SOLUTION
    if c < 1.0:
        return Regime.REPELLING
    return Regime.ATTRACTING


@dataclass(frozen=True)
class FamilyParameter:
    """The constant ``c`` of one solution family plus its derived quantities.

    ``delta`` is always ``c - 1`` but is stored independently so that
    near-critical families keep full relative precision (``c - cos psi`` is
    evaluated as ``delta + 2 sin^2(psi/2)``).

    ``u0`` is the minimum height (attracting), the height of the vertical
    endpoints (repelling) or 0 (critical).  ``psi0`` is the signed axis-crossing
    angle of a repelling family and ``None`` otherwise.
    """

    c: float
    regime: Regime
    delta: float
    u0: Optional[float] = None
    psi0: Optional[float] = None

    @classmethod
    def from_c(cls, c: float) -> "FamilyParameter":
        regime = classify(c)
        if regime is Regime.ATTRACTING:
            # keep the given c rather than rebuilding it from u0
            delta = float(c) - 1.0
            return cls(c=float(c), regime=regime, delta=delta, u0=math.sqrt(2.0 * delta))
        if regime is Regime.REPELLING:
            # keep the given c; c - 1 is exact for c >= 1/2
            return replace(cls.repelling(math.acos(c)), c=float(c), delta=float(c) - 1.0,
                           u0=math.sqrt(2.0 * c))
        if regime is Regime.CRITICAL:
            return cls.critical()
        return cls(c=float(c), regime=regime, delta=float(c) - 1.0)

    @classmethod
    def attracting(cls, u0: float) -> "FamilyParameter":
        """Family whose curves have minimum height ``u0 > 0``."""
        if not (u0 > 0.0 and math.isfinite(u0)):
            raise DomainError(f"attracting family needs u0 > 0, got {u0!r}")
        delta = 0.5 * u0 * u0
        return cls(c=1.0 + delta, regime=Regime.ATTRACTING, delta=delta, u0=float(u0))

    @classmethod
    def repelling(cls, psi0: float) -> "FamilyParameter":
        """Family crossing the axis at inclination ``psi0``, ``0 < |psi0| < pi/2``."""
        if not 0.0 < abs(psi0) < HALF_PI:
            raise DomainError(f"repelling family needs 0 < |psi0| < pi/2, got {psi0!r}")
        c = math.cos(psi0)
        sh = math.sin(0.5 * psi0)
        return cls(c=c, regime=Regime.REPELLING, delta=-2.0 * sh * sh,
                   u0=math.sqrt(2.0 * c), psi0=float(psi0))

    @classmethod
    def critical(cls) -> "FamilyParameter":
        return cls(c=1.0, regime=Regime.CRITICAL, delta=0.0, u0=0.0)

    def c_minus_cos(self, psi: float) -> float:
        """``c - cos psi`` without cancellation."""
        if self.regime is Regime.REPELLING:
            return 2.0 * math.sin(0.5 * (psi - self.psi0)) * math.sin(0.5 * (psi + self.psi0))
        sh = math.sin(0.5 * psi)
        return self.delta + 2.0 * sh * sh

    def height(self, psi: float) -> float:
        """Non-negative height ``sqrt(2 (c - cos psi))`` at inclination ``psi``."""
        q = self.c_minus_cos(psi)
        if q < 0.0:
            if q > -1e-15:
                return 0.0
            raise DomainError(f"inclination {psi!r} not attained by the family c={self.c!r}")
        return math.sqrt(2.0 * q)

    def as_dict(self) -> dict:
        return {"c": self.c, "regime": self.regime.value, "delta": self.delta,
                "u0": self.u0, "psi0": self.psi0}

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyParameter":
        return cls(c=float(data["c"]), regime=Regime(data["regime"]), delta=float(data["delta"]),
                   u0=None if data.get("u0") is None else float(data["u0"]),
                   psi0=None if data.get("psi0") is None else float(data["psi0"]))


@dataclass(frozen=True)
class SampledCurve:
    """An ordered run of :class:`CurvePoint` samples from one family.

    Graph curves are ordered by increasing ``xi``; arclength curves by
    increasing ``s``.  ``normalized`` records whether the canonical horizontal
    translation has been applied.  ``metadata`` holds construction details
    (sample spacing, accumulated quadrature error, termination, ...).
    """

    points: tuple
    family: FamilyParameter
    route: Route
    normalized: bool
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def xi(self) -> np.ndarray:
        return np.array([p.xi for p in self.points])

    @property
    def height(self) -> np.ndarray:
        return np.array([p.height for p in self.points])

    @property
    def psi(self) -> np.ndarray:
        return np.array([p.psi for p in self.points])

    @property
    def v(self) -> np.ndarray:
        return np.array([p.v for p in self.points])

    @property
    def is_graph(self) -> bool:
        return not self.metadata.get("non_graph", False)

    def residuals(self) -> np.ndarray:
        """``U^2/2 + cos psi - c`` at every sample."""
        # cos psi rather than sqrt(1 - v^2), which loses digits next to a vertical point
        return np.array([0.5 * p.height * p.height + math.cos(p.psi) - self.family.c for p in self.points])

    def translated(self, dxi: float) -> "SampledCurve":
        return replace(self, points=tuple(p.translated(dxi) for p in self.points), normalized=False)


@dataclass(frozen=True)
class PhysicalScale:
    """Capillarity constant ``kappa = rho g / sigma`` (units 1/length^2).

    ``sigma`` (force/length) is optional and only needed for dimensional
    forces; ``rho`` and ``g`` are optional and, when given together with
    ``sigma``, must reproduce ``kappa``.
    """

    kappa: float
    sigma: Optional[float] = None
    rho: Optional[float] = None
    g: Optional[float] = None

    def __post_init__(self):
        if not (self.kappa > 0.0 and math.isfinite(self.kappa)):
            raise DomainError(f"kappa must be positive and finite, got {self.kappa!r}")
        if None not in (self.rho, self.g, self.sigma):
            expected = self.rho * self.g / self.sigma
            if abs(self.kappa - expected) > 1e-9 * self.kappa:
                raise DomainError(f"kappa={self.kappa!r} inconsistent with rho*g/sigma={expected!r}")

    @classmethod
    def from_fluid(cls, rho: float, g: float, sigma: float) -> "PhysicalScale":
        if not sigma > 0.0:
            raise DomainError(f"sigma must be positive, got {sigma!r}")
        return cls(kappa=rho * g / sigma, sigma=sigma, rho=rho, g=g)

    @property
    def length(self) -> float:
        """Capillary length ``1/sqrt(kappa)``."""
        return 1.0 / math.sqrt(self.kappa)


def _kappa(scale) -> float:
    kappa = scale.kappa if isinstance(scale, PhysicalScale) else float(scale)
    if not kappa > 0.0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    return kappa


def to_nondimensional(x, u, scale):
    """``(x, u) -> (sqrt(kappa) x, sqrt(kappa) u)``; ``scale`` is a PhysicalScale or kappa."""
    root = math.sqrt(_kappa(scale))
    return x * root, u * root


def to_physical(xi, height, scale):
    """Inverse of :func:`to_nondimensional`."""
    root = math.sqrt(_kappa(scale))
    return xi / root, height / root


def reflect_xi(points: Iterable[CurvePoint]) -> list:
    return [p.reflected_xi() for p in points]


def reflect_height(points: Iterable[CurvePoint]) -> list:
    return [p.reflected_height() for p in points]


def family_of(points: Sequence[CurvePoint]) -> FamilyParameter:
    """Family constant read off the first sample."""
    return FamilyParameter.from_c(first_integral(points[0]))

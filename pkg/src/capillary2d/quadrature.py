"""Horizontal displacement integrals along solution curves.

Along a graph solution with ``U > 0`` the horizontal position is a function of
the inclination,

    xi(psi_b) - xi(psi_a) = int_{psi_a}^{psi_b} cos t / sqrt(2 (c - cos t)) dt,

and for a repelling family (``c = cos psi0``) the half width ``xi0`` between the
axis crossing and the vertical endpoint has two equivalent forms in the variable
``t = -cos(tau)``: one with a ``1/sqrt(t - s0)`` endpoint singularity, one
integrated by parts so that the singularity is gone.

Integrals are evaluated by globally adaptive 21-point Gauss-Kronrod panels.
Inverse square-root endpoint singularities are removed analytically with
``tau = tau* + w^2`` before integrating.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from ._backend import kernels
from .core import HALF_PI, FamilyParameter, Regime
from .errors import ConvergenceError, DomainError

# snapping distance (radians) for an endpoint sitting on a root of c - cos tau
_SNAP = 1e-12
_ANGLE_SLACK = 1e-12


class SingularStrategy(str, enum.Enum):
    REGULARIZED = "regularized"
    SUBSTITUTION_SQRT = "substitution-sqrt"


@dataclass(frozen=True)
class QuadratureSettings:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    singular_endpoint_strategy: SingularStrategy = SingularStrategy.REGULARIZED

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) < 1:
            raise DomainError("max_subdivisions must be at least 1")
        object.__setattr__(self, "singular_endpoint_strategy",
                           SingularStrategy(self.singular_endpoint_strategy))

    def halved(self) -> "QuadratureSettings":
        return QuadratureSettings(0.5 * self.abs_tol, 0.5 * self.rel_tol,
                                  self.max_subdivisions, self.singular_endpoint_strategy)


DEFAULT_SETTINGS = QuadratureSettings()


class QuadEstimate(NamedTuple):
    value: float
    error: float
    panels: int


@dataclass(frozen=True)
class RepellingExtent:
    """Half width of a repelling curve normalized through the origin."""

    psi0: float
    s0: float
    xi0: float
    u0: float
    error: float = 0.0


def _run(kind, p0, p1, p2, a, b, settings, what):
    value, err, panels, ok = kernels.integrate(kind, p0, p1, p2, a, b, settings.abs_tol,
                                               settings.rel_tol, int(settings.max_subdivisions))
    if not ok:
        raise ConvergenceError(
            f"{what}: tolerance not reached within {settings.max_subdivisions} subdivisions "
            f"(estimate {value!r}, error {err!r})", best_estimate=value, error_estimate=err)
    return QuadEstimate(value, err, panels)


def as_family(c: Union[float, FamilyParameter]) -> FamilyParameter:
    """Accept a bare constant ``c`` or a ready-made family."""
    family = c if isinstance(c, FamilyParameter) else FamilyParameter.from_c(float(c))
    if family.regime is Regime.NO_GRAPH_SOLUTION:
        raise DomainError(f"no graph solutions for c = {family.c!r} <= 0")
    return family


def _check_angle(psi: float, name: str) -> float:
    psi = float(psi)
    if not abs(psi) <= HALF_PI + _ANGLE_SLACK:
        raise DomainError(f"{name} = {psi!r} outside [-pi/2, pi/2]")
    return psi


def _repelling_side(family: FamilyParameter, a: float, b: float) -> int:
    """Which branch ``|tau| >= psi0`` the interval lies on; raises if it enters ``|tau| < psi0``."""
    root = abs(family.psi0)
    lo, hi = min(a, b), max(a, b)
    if lo >= root - _SNAP:
        return 1
    if hi <= -root + _SNAP:
        return -1
    raise DomainError(
        f"[{lo!r}, {hi!r}] enters |psi| < {root!r} where c - cos(psi) < 0 (c = {family.c!r})")


def _w(family: FamilyParameter, side: int, psi: float) -> float:
    return math.sqrt(max(0.0, side * psi - abs(family.psi0)))


def delta_xi_estimate(c, psi_a: float, psi_b: float,
                      settings: QuadratureSettings = DEFAULT_SETTINGS) -> QuadEstimate:
    """Signed ``xi(psi_b) - xi(psi_a)`` on the ``U > 0`` branch, with an error estimate.

    ``c`` may be a float or a :class:`FamilyParameter` (preferred near ``c = 1``,
    where it keeps ``c - 1`` exact).  An endpoint on a root of ``c - cos tau`` is
    allowed; the resulting inverse square-root singularity is integrated exactly
    after substitution.
    """
    psi_a = _check_angle(psi_a, "psi_a")
    psi_b = _check_angle(psi_b, "psi_b")
    family = as_family(c)
    if psi_a == psi_b:
        return QuadEstimate(0.0, 0.0, 0)
    if psi_a > psi_b:
        # integrate upwards only, so swapping the limits flips the sign bit and nothing else
        est = delta_xi_estimate(family, psi_b, psi_a, settings)
        return QuadEstimate(-est.value, est.error, est.panels)

    if family.regime is Regime.REPELLING:
        side = _repelling_side(family, psi_a, psi_b)
        wa, wb = _w(family, side, psi_a), _w(family, side, psi_b)
        est = _run(kernels.XI_SQRT, side * abs(family.psi0), float(side), 0.0, wa, wb,
                   settings, "delta_xi")
        return QuadEstimate(side * est.value, est.error, est.panels)

    if family.regime is Regime.CRITICAL and psi_a <= 0.0 <= psi_b:
        raise DomainError("for c = 1 the displacement integral diverges at psi = 0")
    if psi_a < 0.0 < psi_b:
        # the integrand peaks at 0 when c is close to 1
        left = _run(kernels.XI_REGULAR, family.delta, 0.0, 0.0, psi_a, 0.0, settings, "delta_xi")
        right = _run(kernels.XI_REGULAR, family.delta, 0.0, 0.0, 0.0, psi_b, settings, "delta_xi")
        return QuadEstimate(left.value + right.value, left.error + right.error,
                            left.panels + right.panels)
    return _run(kernels.XI_REGULAR, family.delta, 0.0, 0.0, psi_a, psi_b, settings, "delta_xi")


def delta_xi(c, psi_a: float, psi_b: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Signed horizontal displacement between inclinations ``psi_a`` and ``psi_b``.

    Examples
    --------
    >>> round(delta_xi(1.5, 0.0, math.pi / 2), 12)
    0.862795787956
    """
    return delta_xi_estimate(c, psi_a, psi_b, settings).value


def cumulative_delta_xi(c, psi_nodes: Sequence[float],
                        settings: QuadratureSettings = DEFAULT_SETTINGS):
    """``xi(psi_k) - xi(psi_0)`` for every node, by summing panel integrals.

    Returns ``(xi, err)`` arrays; ``err[k]`` bounds the accumulated error at node ``k``.
    """
    family = as_family(c)
    nodes = [_check_angle(p, "psi") for p in psi_nodes]
    if len(nodes) == 0:
        return np.zeros(0), np.zeros(0)
    if family.regime is Regime.REPELLING:
        side = _repelling_side(family, min(nodes), max(nodes))
        w = [_w(family, side, p) for p in nodes]
        vals, errs, ok = kernels.integrate_steps(kernels.XI_SQRT, side * abs(family.psi0), float(side),
                                                 0.0, w, settings.abs_tol, settings.rel_tol,
                                                 int(settings.max_subdivisions))
        vals = [side * x for x in vals]
    else:
        if family.regime is Regime.CRITICAL and min(nodes) <= 0.0 <= max(nodes):
            raise DomainError("for c = 1 the displacement integral diverges at psi = 0")
        vals, errs, ok = kernels.integrate_steps(kernels.XI_REGULAR, family.delta, 0.0, 0.0, nodes,
                                                 settings.abs_tol, settings.rel_tol,
                                                 int(settings.max_subdivisions))
    if not ok:
        raise ConvergenceError("cumulative_delta_xi: a panel missed its tolerance")
    xi = np.concatenate([[0.0], np.cumsum(vals)])
    err = np.concatenate([[0.0], np.cumsum(errs)])
    return xi, err


def _repelling_constants(psi0: float):
    cos0 = math.cos(psi0)
    sh = math.sin(0.5 * psi0)
    return -cos0, 2.0 * sh * sh, 1.0 + cos0, cos0


def xi0(psi0: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> RepellingExtent:
    """Half width ``xi0`` of the repelling curve crossing the axis at ``psi0``.

    With the default ``REGULARIZED`` strategy this integrates the
    integrated-by-parts form ``sqrt(2) xi0 = 2 int_{s0}^0 sqrt(t - s0) (1 - t^2)^{-3/2} dt``,
    whose integrand is bounded.  ``SUBSTITUTION_SQRT`` integrates the original
    form ``-int_{s0}^0 t / (sqrt(1 - t^2) sqrt(t - s0)) dt`` after ``t = s0 + w^2``;
    the two agree to quadrature accuracy and are kept for cross-checking.
    """
    psi0 = float(psi0)
    if not 0.0 < psi0 <= HALF_PI:
        raise DomainError(f"psi0 must lie in (0, pi/2], got {psi0!r}")
    if psi0 == HALF_PI:
        # the degenerate curve U = 0; cos(pi/2) is not exactly zero in floating point
        return RepellingExtent(psi0, 0.0, 0.0, 0.0, 0.0)
    s0, eps, one_minus_s0, cos0 = _repelling_constants(psi0)
    u0 = math.sqrt(2.0 * cos0)
    if settings.singular_endpoint_strategy is SingularStrategy.REGULARIZED:
        est = _run(kernels.XI0_PARTS, eps, one_minus_s0, s0, 0.0, cos0, settings, "xi0")
        value, err = math.sqrt(2.0) * est.value, math.sqrt(2.0) * est.error
    else:
        est = _run(kernels.XI0_SQRT, eps, one_minus_s0, s0, 0.0, math.sqrt(cos0), settings, "xi0")
        value, err = est.value / math.sqrt(2.0), est.error / math.sqrt(2.0)
    return RepellingExtent(psi0, s0, value, u0, err)


def dxi0_dU0(psi0: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Slope ``d xi0 / d U0`` of the repelling half width along the family.

    ``U0^2 = 2 cos psi0`` is the height of the vertical endpoints.  Equals
    ``(U0 / sqrt 2) int_{s0}^0 dt / ((1 - t^2)^{3/2} sqrt(t - s0))``; the
    endpoint singularity is removed with ``t = s0 + w^2``.  Positive, and
    vanishing like ``U0^2`` as ``psi0 -> pi/2``.
    """
    psi0 = float(psi0)
    if not 0.0 < psi0 < HALF_PI:
        raise DomainError(f"psi0 must lie in (0, pi/2), got {psi0!r}")
    s0, eps, one_minus_s0, cos0 = _repelling_constants(psi0)
    u0 = math.sqrt(2.0 * cos0)
    est = _run(kernels.SLOPE_SQRT, eps, one_minus_s0, s0, 0.0, math.sqrt(cos0), settings, "dxi0_dU0")
    return u0 / math.sqrt(2.0) * est.value

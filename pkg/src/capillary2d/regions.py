"""Loci of vertical points across a family, and the limit of attracting curves.

The vertical endpoints of the normalized attracting curves trace the boundary
of the region they sweep; for repelling curves through the origin the
endpoints trace two loci, one the point reflection of the other.

:func:`limit_sweep` translates attracting curves with shrinking minimum
height so that they share a point with the critical curve and measures how
fast they approach it on a compact window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .core import HALF_PI, FamilyParameter
from .curves import CriticalAnchor, critical_xi
from .errors import DomainError
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, cumulative_delta_xi, delta_xi, xi0


@dataclass(frozen=True)
class EnvelopeLocus:
    """Ordered ``(xi, U)`` vertical points, one per generating parameter.

    ``branch`` is the quadrant as ``(sign xi, sign U)``; ``parameters`` holds
    the ``u0`` or ``psi0`` that produced each point.
    """

    points: tuple
    family_tag: str
    branch: Tuple[int, int]
    parameters: tuple

    @property
    def xi(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def height(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    def __len__(self):
        return len(self.points)

    def mirrored(self) -> "EnvelopeLocus":
        """Reflection in the vertical axis."""
        return EnvelopeLocus(tuple((-x, u) for x, u in self.points), self.family_tag,
                             (-self.branch[0], self.branch[1]), self.parameters)

    def point_reflected(self) -> "EnvelopeLocus":
        """Reflection through the origin."""
        return EnvelopeLocus(tuple((-x, -u) for x, u in self.points), self.family_tag,
                             (-self.branch[0], -self.branch[1]), self.parameters)


def _grid(values, name) -> list:
    vals = [float(v) for v in values]
    if not vals:
        raise DomainError(f"{name} must not be empty")
    return vals


def attracting_envelope(u0_grid: Sequence[float],
                        settings: QuadratureSettings = DEFAULT_SETTINGS) -> EnvelopeLocus:
    """Right-hand vertical endpoints ``(xi_end(u0), sqrt(u0^2 + 2))``; use ``mirrored()`` for the left."""
    grid = _grid(u0_grid, "u0_grid")
    if any(not u > 0.0 for u in grid):
        raise DomainError("u0 grid entries must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("u0 grid must be strictly increasing")
    points = tuple((delta_xi(FamilyParameter.attracting(u), 0.0, HALF_PI, settings),
                    math.sqrt(u * u + 2.0)) for u in grid)
    return EnvelopeLocus(points, "attracting", (1, 1), tuple(grid))


def repelling_envelope(psi0_grid: Sequence[float], settings: QuadratureSettings = DEFAULT_SETTINGS):
    """Upper and lower loci ``(E_plus, E_minus)`` of vertical points of repelling curves.

    Grid values must lie in ``(0, pi/2]``; ``pi/2`` contributes the limit point
    at the origin.
    """
    grid = _grid(psi0_grid, "psi0_grid")
    if any(not 0.0 < p <= HALF_PI for p in grid):
        raise DomainError("psi0 grid entries must lie in (0, pi/2]")
    points = []
    for p in grid:
        ext = xi0(p, settings)
        points.append((ext.xi0, ext.u0))
    upper = EnvelopeLocus(tuple(points), "repelling", (1, 1), tuple(grid))
    return upper, upper.point_reflected()


@dataclass(frozen=True)
class LimitSweepReport:
    u0: tuple
    distances: tuple
    error_bounds: tuple
    window: Tuple[float, float]
    anchor: CriticalAnchor
    n_window: int

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.distances, self.distances[1:]))

    def __len__(self):
        return len(self.distances)


def critical_height_at(xi: np.ndarray, anchor: CriticalAnchor = CriticalAnchor()) -> np.ndarray:
    """Height of the critical curve above the given positions, by inverting its closed form."""
    xi = np.asarray(xi, dtype=float)
    top = critical_xi(HALF_PI, anchor)
    if np.any(xi > top):
        raise DomainError(f"positions beyond the vertical point xi = {top!r} of the critical curve")
    lo = np.full(xi.shape, 0.0)
    hi = np.full(xi.shape, HALF_PI)
    t2 = math.tan(0.25 * anchor.psi2)
    c2 = math.cos(0.5 * anchor.psi2)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        val = anchor.xi2 + np.log(np.tan(0.25 * mid) / t2) + 2.0 * (np.cos(0.5 * mid) - c2)
        below = val < xi
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 2.0 * np.sin(0.25 * (lo + hi))


def _hermite(x_nodes, y_nodes, d_nodes, x):
    k = np.clip(np.searchsorted(x_nodes, x) - 1, 0, len(x_nodes) - 2)
    x0, x1 = x_nodes[k], x_nodes[k + 1]
    h = x1 - x0
    t = (x - x0) / h
    h00 = (1 + 2 * t) * (1 - t) ** 2
    h10 = t * (1 - t) ** 2
    h01 = t * t * (3 - 2 * t)
    h11 = t * t * (t - 1)
    return h00 * y_nodes[k] + h10 * h * d_nodes[k] + h01 * y_nodes[k + 1] + h11 * h * d_nodes[k + 1]


def _translated_height(u0, anchor, window_xi, n_psi, settings):
    """Height of the attracting curve moved so that inclination psi2 sits at xi2."""
    family = FamilyParameter.attracting(u0)
    nodes = np.linspace(-HALF_PI, HALF_PI, n_psi)
    xi_rel, err = cumulative_delta_xi(family, nodes, settings)
    shift = anchor.xi2 - delta_xi(family, -HALF_PI, anchor.psi2, settings)
    xs = xi_rel + shift
    lo, hi = window_xi[0], window_xi[-1]
    if lo < xs[0] or hi > xs[-1]:
        raise DomainError(f"window [{lo!r}, {hi!r}] leaves the translated attracting curve "
                          f"for u0 = {u0!r}, which spans [{xs[0]!r}, {xs[-1]!r}]")
    heights = np.array([family.height(p) for p in nodes])
    # interior nodes only: tan(psi) is infinite at the vertical ends
    inner = slice(1, -1)
    coarse = slice(1, -1, 2)
    kx, ky, kd = xs[inner], heights[inner], np.tan(nodes[inner])
    if lo < kx[0] or hi > kx[-1]:
        raise DomainError("window reaches the vertical ends of the attracting curve")
    fine = _hermite(kx, ky, kd, window_xi)
    cx, cy, cd = xs[coarse], heights[coarse], np.tan(nodes[coarse])
    if cx[0] <= lo and hi <= cx[-1]:
        interp_err = np.max(np.abs(_hermite(cx, cy, cd, window_xi) - fine)) / 15.0
    else:
        interp_err = math.inf
    slope = np.max(np.abs(np.tan(nodes[inner][(kx >= lo) & (kx <= hi)]))) if n_psi > 2 else 0.0
    return fine, float(interp_err + slope * (err[-1] + abs(shift) * 1e-16))


def limit_sweep(u0_sequence: Sequence[float], anchor: CriticalAnchor = CriticalAnchor(),
                window: Tuple[float, float] = (-3.0, -0.5), n_window: int = 601,
                n_psi: int = 8001, settings: QuadratureSettings = DEFAULT_SETTINGS) -> LimitSweepReport:
    """Sup-norm distance to the critical curve on ``window`` for each ``u0``.

    Both curves are compared as heights over ``n_window`` equally spaced
    positions.  The critical curve is inverted exactly; the attracting curve is
    sampled on ``n_psi`` inclinations and interpolated by cubic Hermite
    polynomials in ``xi`` using the exact slopes ``tan psi``.  The error bound
    combines the interpolation error (Richardson estimate against every other
    node) with the accumulated quadrature error.
    """
    seq = _grid(u0_sequence, "u0_sequence")
    if any(not u > 0.0 for u in seq):
        raise DomainError("u0 values must be positive")
    if any(b >= a for a, b in zip(seq, seq[1:])):
        raise DomainError("u0 sequence must be strictly decreasing")
    a, b = float(window[0]), float(window[1])
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"window must be a finite interval with a < b, got {window!r}")
    if anchor.psi2 > HALF_PI:
        raise DomainError("anchor inclination must not exceed pi/2 to lie on an attracting curve")
    if int(n_window) < 2 or int(n_psi) < 5:
        raise DomainError("n_window must be at least 2 and n_psi at least 5")
    xs = np.linspace(a, b, int(n_window))
    critical = critical_height_at(xs, anchor)
    distances, bounds = [], []
    for u0 in seq:
        heights, bound = _translated_height(u0, anchor, xs, int(n_psi), settings)
        distances.append(float(np.max(np.abs(heights - critical))))
        bounds.append(bound + 1e-14)
    return LimitSweepReport(tuple(seq), tuple(distances), tuple(bounds), (a, b), anchor, int(n_window))

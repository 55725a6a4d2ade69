"""Geometry behind the four reference figures, as plain data.

Each builder returns a :class:`FigureData`: labelled curves (with the force
each one carries, when meaningful) and labelled envelope loci.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..core import HALF_PI, FamilyParameter, SampledCurve
from ..curves import CriticalAnchor, attracting_curve, critical_curve, repelling_curve
from ..forces import attracting_force, repelling_force
from ..quadrature import delta_xi
from ..regions import EnvelopeLocus, attracting_envelope, repelling_envelope


@dataclass
class FigureCurve:
    label: str
    curve: SampledCurve
    force: Optional[float] = None
    style: str = "solid"


@dataclass
class FigureData:
    number: int
    description: str
    curves: List[FigureCurve] = field(default_factory=list)
    loci: List[tuple] = field(default_factory=list)  # (label, EnvelopeLocus)


def figure1(psi0: float = math.pi / 3, samples: int = 101) -> FigureData:
    """A repelling curve; the sign of its curvature flips where it crosses the axis."""
    curve = repelling_curve(psi0, samples)
    fig = FigureData(1, "repelling curve through the origin; curvature U and the sense of "
                        "increasing psi change sign at the axis crossing")
    fig.curves.append(FigureCurve(f"psi0={psi0:.6g}", curve, repelling_force(psi0).f))
    return fig


def figure2(u0_values=(0.1, 0.25, 0.5, 1.0, 1.5, 2.0), samples: int = 101) -> FigureData:
    """Normalized attracting curves, each a curve of constant force ``u0^2``, and their endpoint loci."""
    fig = FigureData(2, "normalized attracting curves with minimum at xi = 0; loci of vertical endpoints")
    for u0 in u0_values:
        fig.curves.append(FigureCurve(f"u0={u0:.6g}", attracting_curve(u0, samples),
                                      attracting_force(u0).f))
    grid = np.geomspace(min(u0_values), max(u0_values), 40)
    right = attracting_envelope(grid)
    fig.loci.append(("D+ right", right))
    fig.loci.append(("D+ left", right.mirrored()))
    return fig


def figure3(u0_values=(0.2, 0.1, 0.05, 0.025), anchor: CriticalAnchor = CriticalAnchor(),
            samples: int = 201) -> FigureData:
    """Attracting curves translated so that inclination ``psi2`` sits at ``xi2``, and their limit."""
    fig = FigureData(3, "attracting curves before and after translation towards the critical curve")
    first = attracting_curve(u0_values[0], samples)
    fig.curves.append(FigureCurve(f"u0={u0_values[0]:.6g} untranslated", first,
                                  attracting_force(u0_values[0]).f, "dashed"))
    for u0 in u0_values:
        curve = attracting_curve(u0, samples)
        shift = anchor.xi2 - delta_xi(FamilyParameter.attracting(u0), 0.0, min(anchor.psi2, HALF_PI))
        fig.curves.append(FigureCurve(f"u0={u0:.6g}", curve.translated(shift), attracting_force(u0).f))
    fig.curves.append(FigureCurve("critical", critical_curve(anchor, samples, psi_min=0.02), 0.0))
    return fig


def figure4(psi0_values=tuple(math.radians(d) for d in (15, 30, 45, 60, 75)),
            samples: int = 101, locus_points: int = 60) -> FigureData:
    """Repelling curves through the origin and the two loci of their vertical points."""
    fig = FigureData(4, "repelling curves normalized through the origin; loci E+ and E- of vertical points")
    for p in psi0_values:
        fig.curves.append(FigureCurve(f"psi0={p:.6g}", repelling_curve(p, samples), repelling_force(p).f))
    grid = np.linspace(HALF_PI, math.radians(5.0), locus_points)
    upper, lower = repelling_envelope(grid)
    fig.loci.append(("E+", upper))
    fig.loci.append(("E-", lower))
    return fig


BUILDERS = {1: figure1, 2: figure2, 3: figure3, 4: figure4}


def locus_as_polyline(label: str, locus: EnvelopeLocus) -> dict:
    return {"xi": list(locus.xi), "U": list(locus.height), "style": "dashed", "label": label}

"""Serialization of curves and tables to CSV, JSON and SVG, plus readers for the first two.

Numbers are written with ``%.{precision}g``, which never depends on the
locale.  JSON mirrors :class:`~capillary2d.core.SampledCurve` field for field.
"""

from __future__ import annotations

import enum
import io
import json
import math
from typing import Iterable, List, Optional, Sequence

from ..core import CurvePoint, FamilyParameter, Route, SampledCurve
from ..errors import DomainError

CSV_COLUMNS = ("xi", "U", "psi", "v", "s", "c", "regime")
SVG_WIDTH, SVG_HEIGHT, SVG_MARGIN = 800, 600, 40


def fmt(x, precision: int) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    value = float(x) + 0.0  # folds -0.0 into 0.0
    return f"{value:.{precision}g}"


def rounded(x, precision: int):
    """``x`` as it would read back after printing with ``precision`` digits."""
    if x is None or isinstance(x, (str, bool)):
        return x
    return float(fmt(x, precision))


def _jsonable(obj, precision: int):
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, precision) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    try:
        value = float(obj)
    except (TypeError, ValueError):
        return str(obj)
    if not math.isfinite(value):
        return str(value)
    return rounded(value, precision)


# ---------------------------------------------------------------- curves

def curve_to_dict(curve: SampledCurve, precision: int) -> dict:
    return {
        "points": [{"xi": rounded(p.xi, precision), "height": rounded(p.height, precision),
                    "psi": rounded(p.psi, precision), "v": rounded(p.v, precision),
                    "s": rounded(p.s, precision)} for p in curve.points],
        "family": _jsonable(curve.family.as_dict(), precision),
        "route": curve.route.value,
        "normalized": curve.normalized,
        "metadata": _jsonable(curve.metadata, precision),
    }


def curve_from_dict(data: dict) -> SampledCurve:
    points = tuple(CurvePoint(float(p["xi"]), float(p["height"]), float(p["psi"]), float(p["v"]),
                              None if p.get("s") is None else float(p["s"])) for p in data["points"])
    return SampledCurve(points, FamilyParameter.from_dict(data["family"]), Route(data["route"]),
                        bool(data["normalized"]), dict(data.get("metadata", {})))


def curve_to_json(curve: SampledCurve, precision: int) -> str:
    return json.dumps(curve_to_dict(curve, precision), indent=2, sort_keys=False) + "\n"


def read_curve_json(text: str) -> SampledCurve:
    return curve_from_dict(json.loads(text))


def curve_rows(curve: SampledCurve, precision: int, extra: Sequence = ()) -> List[str]:
    fam = curve.family
    rows = []
    for p in curve.points:
        cells = [fmt(p.xi, precision), fmt(p.height, precision), fmt(p.psi, precision),
                 fmt(p.v, precision), fmt(p.s, precision), fmt(fam.c, precision), fam.regime.value]
        cells.extend(fmt(e(p) if callable(e) else e, precision) for e in extra)
        rows.append(",".join(cells))
    return rows


def curve_to_csv(curve: SampledCurve, precision: int, extra_columns=(), extra=()) -> str:
    """CSV with ``#`` metadata lines, the fixed header and one row per sample."""
    out = io.StringIO()
    out.write(f"# route: {curve.route.value}\n")
    out.write(f"# normalized: {'true' if curve.normalized else 'false'}\n")
    out.write("# family: " + json.dumps(_jsonable(curve.family.as_dict(), precision)) + "\n")
    out.write("# metadata: " + json.dumps(_jsonable(curve.metadata, precision)) + "\n")
    out.write(",".join(CSV_COLUMNS + tuple(extra_columns)) + "\n")
    for row in curve_rows(curve, precision, extra):
        out.write(row + "\n")
    return out.getvalue()


def read_curve_csv(text: str) -> SampledCurve:
    meta = {}
    rows = []
    header = None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
            if tuple(header[:len(CSV_COLUMNS)]) != CSV_COLUMNS:
                raise DomainError(f"unexpected CSV header {line!r}")
            continue
        rows.append(dict(zip(header, line.split(","))))
    if header is None:
        raise DomainError("CSV contains no header")
    points = tuple(CurvePoint(float(r["xi"]), float(r["U"]), float(r["psi"]), float(r["v"]),
                              float(r["s"]) if r["s"] else None) for r in rows)
    family = FamilyParameter.from_dict(json.loads(meta["family"]))
    return SampledCurve(points, family, Route(meta["route"]), meta.get("normalized") == "true",
                        json.loads(meta.get("metadata", "{}")))


# ---------------------------------------------------------------- tables

def table_to_csv(columns: Sequence[str], rows: Iterable[Sequence], precision: int,
                 comments: Sequence[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"# {c}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt(x, precision) for x in row) + "\n")
    return out.getvalue()


def to_json(payload, precision: int) -> str:
    return json.dumps(_jsonable(payload, precision), indent=2) + "\n"


# ---------------------------------------------------------------- svg

def svg_document(polylines: Sequence[dict], title: Optional[str] = None) -> str:
    """Polylines in a fixed 800x600 viewBox, scaled together, with the xi axis drawn.

    Each polyline is ``{"xi": [...], "U": [...], "style": "solid"|"dashed", "label": str}``.
    """
    xs = [x for pl in polylines for x in pl["xi"] if math.isfinite(x)]
    us = [u for pl in polylines for u in pl["U"] if math.isfinite(u)]
    if not xs:
        raise DomainError("nothing to draw")
    x0, x1 = min(xs), max(xs)
    u0, u1 = min(min(us), 0.0), max(max(us), 0.0)
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if u1 == u0:
        u0, u1 = u0 - 1.0, u1 + 1.0
    scale = min((SVG_WIDTH - 2 * SVG_MARGIN) / (x1 - x0), (SVG_HEIGHT - 2 * SVG_MARGIN) / (u1 - u0))
    ox = 0.5 * (SVG_WIDTH - scale * (x1 - x0)) - scale * x0
    oy = 0.5 * (SVG_HEIGHT + scale * (u1 - u0)) + scale * u0

    def px(x):
        return f"{ox + scale * x:.3f}"

    def py(u):
        return f"{oy - scale * u:.3f}"

    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
             f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}">']
    if title:
        lines.append(f"<title>{title}</title>")
    lines.append(f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>')
    lines.append(f'<line class="xi-axis" x1="{SVG_MARGIN}" y1="{py(0.0)}" x2="{SVG_WIDTH - SVG_MARGIN}" '
                 f'y2="{py(0.0)}" stroke="#888888" stroke-width="1"/>')
    for pl in polylines:
        pts = " ".join(f"{px(x)},{py(u)}" for x, u in zip(pl["xi"], pl["U"])
                       if math.isfinite(x) and math.isfinite(u))
        dash = ' stroke-dasharray="6,4"' if pl.get("style") == "dashed" else ""
        label = pl.get("label", "")
        lines.append(f'<polyline data-label="{label}" fill="none" stroke="black" '
                     f'stroke-width="1.5"{dash} points="{pts}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def curve_polyline(curve: SampledCurve, label: str = "", style: str = "solid") -> dict:
    return {"xi": list(curve.xi), "U": list(curve.height), "style": style, "label": label}

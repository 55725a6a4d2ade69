"""Command-line interface: ``capillary2d <command> [options]``.

Exit status is 0 on success, 2 on a usage error and 1 when the computation
itself is impossible (domain, convergence or no-solution errors); in the last
case a single line starting with ``error:`` goes to standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from typing import List, Optional

from ..core import HALF_PI, CurvePoint, FamilyParameter, PhysicalScale, to_nondimensional, to_physical
from ..curves import (CriticalAnchor, IntegratorSettings, attracting_curve, critical_curve,
                      critical_point, integrate_arclength, integrate_arclength_both, repelling_curve)
from ..errors import CapillaryError, NoSolutionError
from ..forces import (PlateConfig, attracting_force, force_of, plate_separation, repelling_force,
                      solve_plates)
from ..regions import attracting_envelope, limit_sweep, repelling_envelope
from . import emit
from .figures import BUILDERS, locus_as_polyline

PRECISION_ENV = "CAPILLARY2D_PRECISION"
DEFAULT_PRECISION = 12


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- argument helpers

def _float_list(text: str) -> List[float]:
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_angle(parser, name: str, what: str):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(f"--{name}-deg", type=float, metavar="DEG", help=f"{what} in degrees")
    group.add_argument(f"--{name}-rad", type=float, metavar="RAD", help=f"{what} in radians")


def _angle(args, name: str, default=None, required=False):
    key = name.replace("-", "_")
    deg = getattr(args, f"{key}_deg", None)
    rad = getattr(args, f"{key}_rad", None)
    if deg is not None:
        return math.radians(deg)
    if rad is not None:
        return rad
    if required:
        raise UsageError(f"--{name}-deg or --{name}-rad is required")
    return default


def _add_regime(parser, *choices):
    group = parser.add_mutually_exclusive_group(required=True)
    for c in choices:
        group.add_argument(f"--{c}", dest="regime", action="store_const", const=c)


def _add_output(parser, formats=("csv", "json", "svg"), default="csv"):
    parser.add_argument("--format", choices=formats, default=default)
    parser.add_argument("-o", "--output", help="write here instead of standard output")
    parser.add_argument("--precision", type=int, default=None,
                        help=f"significant digits, 1-17 (default {DEFAULT_PRECISION}, "
                             f"or ${PRECISION_ENV})")


def _precision(args) -> int:
    p = args.precision
    if p is None:
        env = os.environ.get(PRECISION_ENV)
        if env is None:
            return DEFAULT_PRECISION
        try:
            p = int(env)
        except ValueError:
            raise UsageError(f"{PRECISION_ENV} must be an integer, got {env!r}")
    if not 1 <= p <= 17:
        raise UsageError(f"precision must lie in [1, 17], got {p}")
    return p


def _write(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _key_values(pairs, precision: int) -> str:
    return "".join(f"{k} = {emit.fmt(v, precision)}\n" for k, v in pairs)


# ---------------------------------------------------------------- commands

def _ode_curve(regime, args, s_max):
    settings = IntegratorSettings()
    if regime == "attracting":
        start = CurvePoint.from_psi(0.0, args.u0, 0.0, 0.0)
        curve = integrate_arclength_both(start, s_max, s_max, settings)
    elif regime == "repelling":
        psi0 = _angle(args, "psi0", required=True)
        curve = integrate_arclength_both(CurvePoint.from_psi(0.0, 0.0, psi0, 0.0), s_max, s_max, settings)
    else:
        anchor = _anchor(args)
        psi_start = min(anchor.psi2, HALF_PI) / args.samples
        start = critical_point(psi_start, anchor)
        curve = integrate_arclength(dataclasses.replace(start, s=0.0), s_max, settings)
        return dataclasses.replace(curve, normalized=True)
    return dataclasses.replace(curve, normalized=True)


def _anchor(args) -> CriticalAnchor:
    return CriticalAnchor(_angle(args, "psi2", default=HALF_PI), args.xi2)


def cmd_curve(args) -> str:
    regime = args.regime
    if regime == "attracting" and args.u0 is None:
        raise UsageError("--attracting needs --u0")
    if args.route == "ode":
        curve = _ode_curve(regime, args, args.s_max)
    elif regime == "attracting":
        curve = attracting_curve(args.u0, args.samples)
    elif regime == "repelling":
        curve = repelling_curve(_angle(args, "psi0", required=True), args.samples)
    else:
        curve = critical_curve(_anchor(args), args.samples)
    p = _precision(args)
    if args.format == "json":
        return emit.curve_to_json(curve, p)
    if args.format == "svg":
        return emit.svg_document([emit.curve_polyline(curve, regime)], f"{regime} curve")
    return emit.curve_to_csv(curve, p)


def cmd_force(args) -> str:
    p = _precision(args)
    scale = args.sigma
    if args.regime == "attracting":
        if args.u0 is None:
            raise UsageError("--attracting needs --u0")
        result = attracting_force(args.u0, scale)
    elif args.regime == "repelling":
        result = repelling_force(_angle(args, "psi0", required=True), scale)
    else:
        result = force_of(FamilyParameter.critical(), scale)
    if args.format == "json":
        return emit.to_json({"f": result.f, "magnitude": result.magnitude, "kind": result.kind,
                             "family": result.family.as_dict(),
                             "dimensional_per_length": result.dimensional_per_length}, p)
    pairs = [("F", result.f), ("magnitude", result.magnitude), ("regime", result.family.regime.value)]
    if result.dimensional_per_length is not None:
        pairs.append(("dimensional_per_length", result.dimensional_per_length))
    return _key_values(pairs, p)


def _geometry_pairs(family, geom):
    pairs = [("regime", family.regime.value), ("c", family.c)]
    if family.u0 is not None and family.regime.value == "attracting":
        pairs.append(("u0", family.u0))
    if family.psi0 is not None:
        pairs.append(("psi0", family.psi0))
    pairs += [("separation", geom.separation), ("xi_left", geom.xi_left), ("xi_right", geom.xi_right),
              ("height_left", geom.height_left), ("height_right", geom.height_right),
              ("psi_left", geom.psi_left), ("psi_right", geom.psi_right), ("F", geom.force.f)]
    if geom.force.dimensional_per_length is not None:
        pairs.append(("dimensional_per_length", geom.force.dimensional_per_length))
    return pairs


def cmd_plates(args) -> str:
    p = _precision(args)
    g1 = _angle(args, "gamma1", required=True)
    g2 = _angle(args, "gamma2", required=True)
    side2 = "right" if args.side1 == "left" else "left"
    if args.separation is not None:
        if args.regime == "critical":
            raise UsageError("the inverse problem needs --attracting or --repelling")
        config = PlateConfig(g1, g2, args.side1, side2, args.separation)
        sol = solve_plates(config, args.regime, scale=args.sigma)
        family, geom = sol.family, sol.geometry
        extra = [("alternatives", len(sol.alternatives))]
    else:
        config = PlateConfig(g1, g2, args.side1, side2)
        if args.regime == "attracting":
            if args.u0 is None:
                raise UsageError("forward mode needs --u0 (or give --separation)")
            family = FamilyParameter.attracting(args.u0)
        elif args.regime == "repelling":
            family = FamilyParameter.repelling(_angle(args, "psi0", required=True))
        else:
            family = FamilyParameter.critical()
        geom = plate_separation(family, config, scale=args.sigma)
        extra = []
    pairs = _geometry_pairs(family, geom) + extra
    if args.format == "json":
        return emit.to_json(dict(pairs), p)
    return _key_values(pairs, p)


def cmd_envelope(args) -> str:
    p = _precision(args)
    if args.regime == "attracting":
        if not args.u0_grid:
            raise UsageError("--attracting needs --u0-grid")
        right = attracting_envelope(args.u0_grid)
        loci = [("right", right), ("left", right.mirrored())]
    else:
        if args.psi0_grid_deg:
            grid = [math.radians(d) for d in args.psi0_grid_deg]
        elif args.psi0_grid_rad:
            grid = args.psi0_grid_rad
        else:
            raise UsageError("--repelling needs --psi0-grid-deg or --psi0-grid-rad")
        upper, lower = repelling_envelope(grid)
        loci = [("E+", upper), ("E-", lower)]
    if args.format == "svg":
        return emit.svg_document([locus_as_polyline(n, l) for n, l in loci], f"{args.regime} envelope")
    if args.format == "json":
        return emit.to_json({"loci": [{"label": n, "family_tag": l.family_tag, "branch": l.branch,
                                       "parameters": l.parameters, "points": l.points}
                                      for n, l in loci]}, p)
    rows = [(x, u, par, name) for name, l in loci for (x, u), par in zip(l.points, l.parameters)]
    return emit.table_to_csv(("xi", "U", "parameter", "locus"), rows, p,
                             [f"family: {args.regime}"])


def cmd_limit_sweep(args) -> str:
    p = _precision(args)
    report = limit_sweep(args.u0, _anchor(args), tuple(args.window), args.n_window)
    if args.format == "json":
        return emit.to_json({"u0": report.u0, "distances": report.distances,
                             "error_bounds": report.error_bounds, "window": report.window,
                             "anchor": {"psi2": report.anchor.psi2, "xi2": report.anchor.xi2},
                             "n_window": report.n_window,
                             "strictly_decreasing": report.strictly_decreasing}, p)
    return emit.table_to_csv(("u0", "distance", "error_bound"),
                             zip(report.u0, report.distances, report.error_bounds), p,
                             [f"window: [{emit.fmt(report.window[0], p)}, {emit.fmt(report.window[1], p)}]",
                              f"anchor: psi2={emit.fmt(report.anchor.psi2, p)} xi2={emit.fmt(report.anchor.xi2, p)}",
                              f"strictly_decreasing: {'true' if report.strictly_decreasing else 'false'}"])


def cmd_figure(args) -> str:
    p = _precision(args)
    fig = BUILDERS[args.number]()
    if args.format == "svg":
        polys = [emit.curve_polyline(fc.curve, fc.label, fc.style) for fc in fig.curves]
        polys += [locus_as_polyline(n, l) for n, l in fig.loci]
        return emit.svg_document(polys, f"figure {fig.number}")
    if args.format == "json":
        return emit.to_json({
            "figure": fig.number, "description": fig.description,
            "curves": [{"label": fc.label, "force": fc.force, "curve": emit.curve_to_dict(fc.curve, p)}
                       for fc in fig.curves],
            "loci": [{"label": n, "family_tag": l.family_tag, "branch": l.branch,
                      "parameters": l.parameters, "points": l.points} for n, l in fig.loci]}, p)
    columns = emit.CSV_COLUMNS + ("curve", "force")
    if fig.number == 1:
        columns += ("curvature", "psi_sense")
    lines = [f"# figure: {fig.number}", f"# description: {fig.description}", ",".join(columns)]
    for fc in fig.curves:
        extra = [fc.label, fc.force]
        if fig.number == 1:
            extra += [lambda q: q.height, lambda q: 0 if q.height == 0 else math.copysign(1, q.height)]
        lines += emit.curve_rows(fc.curve, p, extra)
    for name, locus in fig.loci:
        for (x, u), par in zip(locus.points, locus.parameters):
            cells = [emit.fmt(x, p), emit.fmt(u, p), "", "", "", "", f"envelope-{locus.family_tag}",
                     f"locus {name}", ""]
            if fig.number == 1:
                cells += ["", ""]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cmd_convert(args) -> str:
    p = _precision(args)
    if args.kappa is not None:
        scale = PhysicalScale(args.kappa, args.sigma)
    elif None not in (args.rho, args.g, args.sigma):
        scale = PhysicalScale.from_fluid(args.rho, args.g, args.sigma)
    else:
        raise UsageError("give --kappa, or all of --rho, --g and --sigma")
    a = 0.0 if args.x is None else args.x
    b = 0.0 if args.u is None else args.u
    if args.to == "nondimensional":
        xi, height = to_nondimensional(a, b, scale)
        pairs = [("xi", xi), ("U", height)]
    else:
        x, u = to_physical(a, b, scale)
        pairs = [("x", x), ("u", u)]
    pairs += [("kappa", scale.kappa), ("capillary_length", scale.length)]
    if args.format == "json":
        return emit.to_json(dict(pairs), p)
    return _key_values(pairs, p)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capillary2d",
        description="Meniscus curves, plate forces and envelope regions for the planar capillarity "
                    "equation in universal coordinates.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("curve", help="sample one solution curve")
    _add_regime(p, "attracting", "repelling", "critical")
    p.add_argument("--u0", type=float, help="minimum height of an attracting curve")
    _add_angle(p, "psi0", "axis-crossing inclination of a repelling curve")
    _add_angle(p, "psi2", "anchor inclination of the critical curve (default 90 degrees)")
    p.add_argument("--xi2", type=float, default=0.0, help="anchor position of the critical curve")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--route", choices=("quadrature", "ode"), default="quadrature",
                   help="inclination quadrature / closed form, or arclength integration")
    p.add_argument("--s-max", type=float, default=20.0, help="arclength budget per direction (ode route)")
    _add_output(p)
    p.set_defaults(handler=cmd_curve)

    p = sub.add_parser("force", help="normalized plate force of a family")
    _add_regime(p, "attracting", "repelling", "critical")
    p.add_argument("--u0", type=float)
    _add_angle(p, "psi0", "axis-crossing inclination")
    p.add_argument("--sigma", type=float, help="surface tension, for a dimensional force per length")
    _add_output(p, ("text", "json"), "text")
    p.set_defaults(handler=cmd_force)

    p = sub.add_parser("plates", help="plate gap for a family (forward) or family for a gap (inverse)")
    _add_regime(p, "attracting", "repelling", "critical")
    _add_angle(p, "gamma1", "contact angle of plate 1")
    _add_angle(p, "gamma2", "contact angle of plate 2")
    p.add_argument("--side1", choices=("left", "right"), default="left", help="which plate is plate 1")
    p.add_argument("--u0", type=float)
    _add_angle(p, "psi0", "axis-crossing inclination")
    p.add_argument("--separation", type=float, help="solve for the family giving this gap")
    p.add_argument("--sigma", type=float)
    _add_output(p, ("text", "json"), "text")
    p.set_defaults(handler=cmd_plates)

    p = sub.add_parser("envelope", help="loci of vertical points across a family")
    _add_regime(p, "attracting", "repelling")
    p.add_argument("--u0-grid", type=_float_list, metavar="LIST", help="comma-separated, increasing")
    p.add_argument("--psi0-grid-deg", type=_float_list, metavar="LIST", help="comma-separated, in degrees")
    p.add_argument("--psi0-grid-rad", type=_float_list, metavar="LIST", help="comma-separated, in radians")
    _add_output(p)
    p.set_defaults(handler=cmd_envelope)

    p = sub.add_parser("limit-sweep", help="distance of translated attracting curves to the critical curve")
    p.add_argument("--u0", type=_float_list, default=[0.2, 0.1, 0.05, 0.025], metavar="LIST",
                   help="comma-separated, decreasing (default 0.2,0.1,0.05,0.025)")
    _add_angle(p, "psi2", "anchor inclination (default 90 degrees)")
    p.add_argument("--xi2", type=float, default=0.0)
    p.add_argument("--window", type=float, nargs=2, default=[-3.0, -0.5], metavar=("A", "B"))
    p.add_argument("--n-window", type=int, default=601)
    _add_output(p, ("csv", "json"))
    p.set_defaults(handler=cmd_limit_sweep)

    p = sub.add_parser("figure", help="data behind one of the four reference figures")
    p.add_argument("number", type=int, choices=(1, 2, 3, 4))
    _add_output(p)
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("convert", help="convert between physical and universal coordinates")
    p.add_argument("--to", choices=("physical", "nondimensional"), default="nondimensional")
    p.add_argument("--kappa", type=float, help="capillarity constant rho*g/sigma, 1/length^2")
    p.add_argument("--rho", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--x", type=float, help="horizontal coordinate to convert")
    p.add_argument("--u", type=float, help="height to convert")
    _add_output(p, ("text", "json"), "text")
    p.set_defaults(handler=cmd_convert)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        text = args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"capillary2d: error: {exc}", file=sys.stderr)
        return 2
    except (CapillaryError, ValueError, ArithmeticError) as exc:
        message = " ".join(str(exc).split())
        if isinstance(exc, NoSolutionError) and exc.attainable is not None:
            message += f" [attainable: {exc.attainable[0]!r} to {exc.attainable[1]!r}]"
        print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
        return 1
    _write(args, text)
    return 0

import json
import locale
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from capillary2d import attracting_curve, repelling_curve, xi0
from capillary2d.cli import main
from capillary2d.cli.emit import (curve_to_csv, curve_to_json, read_curve_csv, read_curve_json,
                                  rounded)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def key_values(text):
    return {k.strip(): v.strip() for k, _, v in (line.partition("=") for line in text.splitlines())}


def data_rows(csv_text):
    lines = [l for l in csv_text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


class TestExamples:
    def test_repelling_force_sixty_degrees(self, capsys):
        code, out, err = run(capsys, "force", "--repelling", "--psi0-deg", "60")
        assert code == 0 and err == ""
        assert out.splitlines()[0] == "F = -1"
        assert key_values(out)["regime"] == "repelling"

    def test_attracting_curve_five_samples(self, capsys):
        code, out, _ = run(capsys, "curve", "--attracting", "--u0", "1", "--samples", "5", "--format", "csv")
        assert code == 0
        rows = data_rows(out)
        assert len(rows) == 5
        mid = rows[2]
        assert float(mid["xi"]) == 0.0 and float(mid["U"]) == 1.0 and float(mid["psi"]) == 0.0

    def test_plates_forward_then_inverse(self, capsys):
        base = ["plates", "--attracting", "--gamma1-deg", "45", "--gamma2-deg", "45"]
        code, out, _ = run(capsys, *base, "--u0", "0.7", "--precision", "17")
        assert code == 0
        sep = key_values(out)["separation"]
        code, out, _ = run(capsys, *base, "--separation", sep, "--precision", "17")
        assert code == 0
        assert abs(float(key_values(out)["u0"]) - 0.7) < 1e-8


class TestExitCodes:
    @pytest.mark.parametrize("argv", [["nonsense"], ["curve", "--u0", "1"], ["force", "--attracting", "--bogus"],
                                      ["curve", "--attracting", "--u0", "1", "--precision", "30"],
                                      ["force", "--repelling"],
                                      ["curve", "--attracting", "--u0", "1", "--psi0-deg", "3", "--psi0-rad", "1"]])
    def test_usage_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == ""
        assert err

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2

    @pytest.mark.parametrize("argv", [["force", "--attracting", "--u0", "-1"],
                                      ["force", "--repelling", "--psi0-deg", "90"],
                                      ["plates", "--attracting", "--gamma1-deg", "108", "--gamma2-deg", "5.7",
                                       "--separation", "10"],
                                      ["curve", "--repelling", "--psi0-deg", "0"]])
    def test_domain_errors_single_line(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 1 and out == ""
        lines = err.strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith("error:")

    def test_no_solution_reports_range(self, capsys):
        _, _, err = run(capsys, "plates", "--attracting", "--gamma1-deg", "108", "--gamma2-deg", "5.7",
                        "--separation", "10")
        assert "NoSolutionError" in err and "attainable" in err

    def test_help_is_success(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0 and "plates" in out


class TestRoundTrips:
    @pytest.mark.parametrize("precision", [6, 12, 17])
    def test_curve_csv(self, capsys, precision):
        _, out, _ = run(capsys, "curve", "--repelling", "--psi0-deg", "40", "--samples", "21",
                        "--precision", str(precision))
        back = read_curve_csv(out)
        original = repelling_curve(math.radians(40), 21)
        assert len(back) == 21
        for a, b in zip(original.points, back.points):
            for name in ("xi", "height", "psi", "v"):
                assert getattr(b, name) == rounded(getattr(a, name), precision)
        assert back.family.c == rounded(original.family.c, precision)
        assert back.route is original.route and back.normalized

    def test_curve_json(self, capsys):
        _, out, _ = run(capsys, "curve", "--attracting", "--u0", "0.4", "--samples", "11", "--format", "json")
        back = read_curve_json(out)
        original = attracting_curve(0.4, 11)
        np.testing.assert_array_equal(back.xi, [rounded(x, 12) for x in original.xi])
        np.testing.assert_array_equal(back.height, [rounded(x, 12) for x in original.height])
        assert back.family.regime is original.family.regime

    def test_full_precision_is_lossless(self):
        c = repelling_curve(0.7, 9)
        for back in (read_curve_csv(curve_to_csv(c, 17)), read_curve_json(curve_to_json(c, 17))):
            np.testing.assert_array_equal(back.xi, c.xi)
            np.testing.assert_array_equal(back.psi, c.psi)
            assert back.family.c == c.family.c

    def test_ode_route_keeps_arclength(self, capsys):
        _, out, _ = run(capsys, "curve", "--attracting", "--u0", "1", "--route", "ode", "--s-max", "3")
        back = read_curve_csv(out)
        assert back.route.value == "arclength-ode"
        s = [p.s for p in back.points]
        assert all(x is not None for x in s) and s == sorted(s)


class TestFigures:
    def test_figure2_constant_force(self, capsys):
        code, out, _ = run(capsys, "figure", "2", "--format", "csv", "--precision", "17")
        assert code == 0
        curves = {}
        for row in data_rows(out):
            if row["regime"] == "attracting":
                curves.setdefault(row["curve"], set()).add(float(row["force"]))
        assert len(curves) >= 4
        for label, forces in curves.items():
            u0 = float(label.split("=")[1])
            assert forces == {u0 * u0}

    def test_figure1_orientation_flips(self, capsys):
        _, out, _ = run(capsys, "figure", "1", "--format", "csv")
        rows = data_rows(out)
        signs = {math.copysign(1, float(r["curvature"])) for r in rows if float(r["U"]) != 0}
        assert signs == {-1.0, 1.0}
        assert {r["psi_sense"] for r in rows} >= {"-1", "1"}

    def test_figure4_loci_reflect(self, capsys):
        _, out, _ = run(capsys, "figure", "4", "--format", "json")
        payload = json.loads(out)
        assert payload["figure"] == 4
        loci = {l["label"]: l for l in payload["loci"]}
        up, down = loci["E+"], loci["E-"]
        assert [[-x, -u] for x, u in up["points"]] == down["points"]

    @pytest.mark.parametrize("number", ["1", "2", "3", "4"])
    def test_svg(self, capsys, number):
        code, out, _ = run(capsys, "figure", number, "--format", "svg")
        assert code == 0
        root = ET.fromstring(out)
        assert root.get("viewBox") == "0 0 800 600"
        ns = {"s": "http://www.w3.org/2000/svg"}
        assert root.findall(".//s:line[@class='xi-axis']", ns)
        assert len(root.findall(".//s:polyline", ns)) >= 1

    def test_svg_is_deterministic(self, capsys):
        first = run(capsys, "figure", "3", "--format", "svg")[1]
        assert run(capsys, "figure", "3", "--format", "svg")[1] == first

    def test_svg_rejected_for_tables(self, capsys):
        assert run(capsys, "limit-sweep", "--format", "svg")[0] == 2


class TestOtherCommands:
    def test_envelope_json(self, capsys):
        _, out, _ = run(capsys, "envelope", "--repelling", "--psi0-grid-deg", "30,60", "--format", "json",
                        "--precision", "17")
        payload = json.loads(out)
        upper = next(l for l in payload["loci"] if l["label"] == "E+")
        assert upper["points"][1][0] == pytest.approx(xi0(math.pi / 3).xi0, abs=1e-12)

    def test_limit_sweep(self, capsys):
        _, out, _ = run(capsys, "limit-sweep", "--format", "json")
        payload = json.loads(out)
        assert payload["strictly_decreasing"] is True
        assert len(payload["distances"]) == 4

    def test_convert_round_trip(self, capsys):
        _, out, _ = run(capsys, "convert", "--kappa", "4", "--x", "1", "--u", "2")
        kv = key_values(out)
        assert (float(kv["xi"]), float(kv["U"])) == (2.0, 4.0)
        _, out, _ = run(capsys, "convert", "--to", "physical", "--kappa", "4", "--x", "2", "--u", "4")
        kv = key_values(out)
        assert (float(kv["x"]), float(kv["u"])) == (1.0, 2.0)

    def test_dimensional_force(self, capsys):
        _, out, _ = run(capsys, "force", "--attracting", "--u0", "2", "--sigma", "0.5")
        assert float(key_values(out)["dimensional_per_length"]) == 2.0

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "c.csv"
        code, out, _ = run(capsys, "curve", "--critical", "--samples", "7", "-o", str(target))
        assert code == 0 and out == ""
        assert len(read_curve_csv(target.read_text())) == 7


class TestFormatting:
    def test_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CAPILLARY2D_PRECISION", "4")
        _, out, _ = run(capsys, "force", "--repelling", "--psi0-deg", "50")
        assert out.splitlines()[0] == "F = -0.7144"
        _, out, _ = run(capsys, "force", "--repelling", "--psi0-deg", "50", "--precision", "8")
        assert out.splitlines()[0] == "F = -0.71442478"

    def test_bad_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CAPILLARY2D_PRECISION", "many")
        assert run(capsys, "force", "--attracting", "--u0", "1")[0] == 2

    def test_locale_independent(self, capsys):
        before = run(capsys, "curve", "--attracting", "--u0", "0.3", "--samples", "5")[1]
        previous = locale.setlocale(locale.LC_NUMERIC)
        for name in ("de_DE.UTF-8", "fr_FR.UTF-8", "C.UTF-8"):
            try:
                locale.setlocale(locale.LC_NUMERIC, name)
            except locale.Error:
                continue
            try:
                assert run(capsys, "curve", "--attracting", "--u0", "0.3", "--samples", "5")[1] == before
            finally:
                locale.setlocale(locale.LC_NUMERIC, previous)
        body = "\n".join(l for l in before.splitlines() if not l.startswith("#"))
        assert ";" not in body and "1,000" not in body

    def test_no_negative_zero(self, capsys):
        _, out, _ = run(capsys, "curve", "--attracting", "--u0", "1", "--samples", "5")
        assert "-0," not in out and ",-0\n" not in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "capillary2d", "force", "--attracting", "--u0", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.splitlines()[0] == "F = 1"
    bad = subprocess.run([sys.executable, "-m", "capillary2d", "frobnicate"], capture_output=True, text=True)
    assert bad.returncode == 2

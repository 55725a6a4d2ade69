import math
import random

import pytest

from capillary2d import (DomainError, FamilyParameter, InfeasibleConfigurationError, NoSolutionError,
                         PhysicalScale, PlateConfig, PlateSide, attracting_force, delta_xi, force_of,
                         plate_inclination, plate_separation, repelling_force, solve_plates, xi0)
from capillary2d.quadrature import QuadratureSettings, SingularStrategy

SQRT = QuadratureSettings(abs_tol=1e-13, rel_tol=1e-13,
                          singular_endpoint_strategy=SingularStrategy.SUBSTITUTION_SQRT)


class TestForceValues:
    def test_attracting(self):
        assert attracting_force(1.0).f == 1.0
        assert attracting_force(0.0).f == 0.0
        assert attracting_force(0.0).family.regime.value == "critical"
        assert attracting_force(3.0).kind == "attracting"

    def test_dimensional(self):
        assert attracting_force(1.0, PhysicalScale(13.6, sigma=72.0)).dimensional_per_length == 72.0
        assert attracting_force(1.0, 72.0).dimensional_per_length == 72.0
        assert attracting_force(1.0, PhysicalScale(13.6)).dimensional_per_length is None

    def test_repelling(self):
        # the double nearest pi/3 lies 1.1e-16 below it, so F there is -1 + 1.9e-16
        assert repelling_force(math.pi / 3).f == pytest.approx(-1.0, abs=2.3e-16)
        assert force_of(FamilyParameter.from_c(0.5)).f == -1.0
        assert repelling_force(0.0).f == 0.0
        r = repelling_force(1.2)
        assert r.magnitude == -r.f and r.kind == "repelling"

    def test_repelling_bound(self):
        f = repelling_force(math.pi / 2 - 1e-12).f
        assert -2.0 < f < -1.99

    @pytest.mark.parametrize("bad", [-0.1, float("nan")])
    def test_attracting_domain(self, bad):
        with pytest.raises(DomainError):
            attracting_force(bad)

    @pytest.mark.parametrize("bad", [math.pi / 2, -2.0])
    def test_repelling_domain(self, bad):
        with pytest.raises(DomainError):
            repelling_force(bad)

    def test_force_of(self):
        assert force_of(FamilyParameter.attracting(0.5)).f == 0.25
        assert force_of(FamilyParameter.critical()).f == 0.0
        with pytest.raises(DomainError):
            force_of(FamilyParameter.from_c(-1.0))


class TestInclination:
    def test_examples(self):
        assert plate_inclination(math.pi / 2, "right") == 0.0
        assert plate_inclination(0.0, PlateSide.RIGHT) == math.pi / 2
        for g in (0.0, 0.3, 1.7, math.pi):
            assert plate_inclination(g, "left") == -plate_inclination(g, "right")

    def test_range(self):
        with pytest.raises(DomainError):
            plate_inclination(-0.1, "left")
        with pytest.raises(ValueError):
            plate_inclination(1.0, "middle")


class TestConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            PlateConfig(4.0, 1.0)
        with pytest.raises(DomainError):
            PlateConfig(1.0, 1.0, "left", "left")
        with pytest.raises(DomainError):
            PlateConfig(1.0, 1.0, separation=-1.0)

    def test_swapped_sides(self):
        cfg = PlateConfig(0.2, 1.0, side1="right", side2="left")
        assert cfg.left_gamma == 1.0 and cfg.right_gamma == 0.2


class TestSeparation:
    def test_plates_at_minimum(self):
        g = plate_separation(FamilyParameter.attracting(1.0), PlateConfig(math.pi / 2, math.pi / 2))
        assert g.separation == 0.0
        assert g.height_left == g.height_right == 1.0

    def test_full_extent(self):
        g = plate_separation(FamilyParameter.attracting(1.0), PlateConfig(0.0, 0.0))
        assert g.separation == pytest.approx(2 * delta_xi(1.5, 0.0, math.pi / 2), abs=1e-13)
        assert g.separation < 2.0

    def test_repelling_vertical_endpoints(self):
        # left plate meets the lower end (gamma = pi), right plate the upper end (gamma = 0)
        g = plate_separation(FamilyParameter.repelling(math.pi / 3), PlateConfig(math.pi, 0.0))
        assert g.separation == pytest.approx(2 * xi0(math.pi / 3, SQRT).xi0, abs=1e-12)
        assert g.height_left == pytest.approx(-1.0) and g.height_right == pytest.approx(1.0)
        assert g.force.f == repelling_force(math.pi / 3).f

    def test_repelling_mirror(self):
        a = plate_separation(FamilyParameter.repelling(0.5), PlateConfig(2.5, 0.6))
        b = plate_separation(FamilyParameter.repelling(-0.5), PlateConfig(0.6, 2.5))
        assert a.separation == pytest.approx(b.separation, abs=1e-14)

    def test_critical(self):
        g = plate_separation(FamilyParameter.critical(), PlateConfig(2.0, 0.3))
        assert g.separation > 0 and g.force.f == 0.0
        with pytest.raises(InfeasibleConfigurationError):
            plate_separation(FamilyParameter.critical(), PlateConfig(1.0, 0.3))

    def test_infeasible(self):
        with pytest.raises(InfeasibleConfigurationError):
            plate_separation(FamilyParameter.attracting(1.0), PlateConfig(2.0, 2.0))
        with pytest.raises(InfeasibleConfigurationError):
            plate_separation(FamilyParameter.repelling(1.0), PlateConfig(2.0, 0.3))

    def test_position_independence(self):
        rng = random.Random(3)
        fam = FamilyParameter.attracting(0.8)
        forces = set()
        for _ in range(10):
            a, b = sorted(rng.uniform(-1.5, 1.5) for _ in range(2))
            cfg = PlateConfig(a + math.pi / 2, math.pi / 2 - b)
            forces.add(plate_separation(fam, cfg).force.f)
        assert forces == {0.8 * 0.8}


class TestSolve:
    def test_attracting_round_trip(self):
        cfg = PlateConfig(math.pi / 4, math.pi / 4)
        s = plate_separation(FamilyParameter.attracting(0.7), cfg).separation
        sol = solve_plates(PlateConfig(math.pi / 4, math.pi / 4, separation=s))
        assert sol.family.u0 == pytest.approx(0.7, abs=1e-8)
        assert sol.force.f == pytest.approx(0.49, abs=1e-8)

    def test_repelling_round_trip(self):
        cfg = PlateConfig(2.6, 0.2)
        s = plate_separation(FamilyParameter.repelling(0.45), cfg).separation
        sol = solve_plates(PlateConfig(2.6, 0.2, separation=s), "repelling")
        assert sol.family.psi0 == pytest.approx(0.45, abs=1e-8)

    def test_repelling_large_gap_flattens(self):
        cfg = (2.6, 0.2)
        psi = [solve_plates(PlateConfig(*cfg, separation=s), "repelling").family.psi0 for s in (2, 5, 10)]
        assert psi[0] > psi[1] > psi[2] > 0
        forces = [abs(repelling_force(p).f) for p in psi]
        assert forces[0] > forces[1] > forces[2] and forces[2] < 1e-3

    def test_wide_gap_between_wetting_plates_is_attainable(self):
        # the full extent grows like 2 log(1/u0), so a gap of 10 is reached near u0 = 0.0124
        sol = solve_plates(PlateConfig(0.0, 0.0, separation=10.0))
        assert sol.geometry.separation == pytest.approx(10.0, abs=1e-9)
        assert 0.01 < sol.family.u0 < 0.015

    def test_same_branch_has_bounded_gap(self):
        with pytest.raises(NoSolutionError) as info:
            solve_plates(PlateConfig(math.pi * 0.6, 0.1, separation=10.0))
        lo, hi = info.value.attainable
        assert 0 < lo < hi < 10

    def test_repelling_beyond_scan(self):
        with pytest.raises(NoSolutionError):
            solve_plates(PlateConfig(2.6, 0.2, separation=1e-4), "repelling")

    def test_bad_requests(self):
        with pytest.raises(DomainError):
            solve_plates(PlateConfig(1.0, 1.0))
        with pytest.raises(DomainError):
            solve_plates(PlateConfig(1.0, 1.0, separation=1.0), "critical")
        with pytest.raises(InfeasibleConfigurationError):
            solve_plates(PlateConfig(0.3, 0.2, separation=1.0), "repelling")
        with pytest.raises(InfeasibleConfigurationError):
            solve_plates(PlateConfig(2.0, 2.0, separation=1.0), "attracting")

import math

import numpy as np
import pytest

from capillary2d import (CriticalAnchor, DomainError, attracting_curve, attracting_envelope,
                         critical_height_at, critical_xi, limit_sweep, repelling_curve,
                         repelling_envelope)
from frozen import ATTRACTING_HALF_EXTENT_U0_1, LIMIT_SWEEP_DISTANCES, LIMIT_SWEEP_U0


class TestAttractingEnvelope:
    def test_u0_one(self):
        env = attracting_envelope([1.0])
        assert env.points[0][0] == pytest.approx(ATTRACTING_HALF_EXTENT_U0_1, abs=1e-12)
        assert env.points[0][1] == math.sqrt(3.0)

    def test_heights_increase_towards_sqrt2(self):
        env = attracting_envelope([1e-4, 0.1, 0.5, 2.0])
        assert np.all(np.diff(env.height) > 0)
        assert env.height[0] == pytest.approx(math.sqrt(2), abs=1e-8)

    def test_matches_curve_endpoints(self):
        grid = [0.3, 0.9, 2.5]
        env = attracting_envelope(grid)
        for (x, u), u0 in zip(env.points, grid):
            end = attracting_curve(u0, 21)[-1]
            assert abs(end.xi - x) < 1e-9 and abs(end.height - u) < 1e-9

    def test_mirror(self):
        env = attracting_envelope([0.5])
        m = env.mirrored()
        assert m.points[0] == (-env.points[0][0], env.points[0][1])
        assert m.branch == (-1, 1)

    @pytest.mark.parametrize("grid", [[0.0, 1.0], [1.0, 0.5], []])
    def test_bad_grid(self, grid):
        with pytest.raises(DomainError):
            attracting_envelope(grid)


class TestRepellingEnvelope:
    def test_limit_point(self):
        upper, lower = repelling_envelope([math.pi / 2])
        assert upper.points[0] == (0.0, 0.0)
        assert lower.points[0] == (0.0, 0.0)

    def test_reflection_and_bound(self):
        grid = np.linspace(0.05, 1.5, 30)
        upper, lower = repelling_envelope(grid)
        np.testing.assert_array_equal(lower.xi, -upper.xi)
        np.testing.assert_array_equal(lower.height, -upper.height)
        assert np.all(np.abs(upper.height) < math.sqrt(2))
        np.testing.assert_allclose(upper.height ** 2, 2 * np.cos(grid), rtol=1e-14)

    def test_monotone(self):
        grid = np.linspace(1.5, 0.05, 30)  # decreasing psi0
        upper, _ = repelling_envelope(grid)
        assert np.all(np.diff(upper.xi) > 0) and np.all(np.diff(upper.height) > 0)

    def test_matches_curve_endpoints(self):
        for p in (0.3, 1.1):
            (x, u), = repelling_envelope([p])[0].points
            end = repelling_curve(p, 21)[-1]
            assert abs(end.xi - x) < 1e-9 and abs(end.height - u) < 1e-9

    def test_slope_at_origin_vanishes(self):
        slopes = []
        for k in (2, 3, 4):
            grid = [math.pi / 2, math.pi / 2 - 10.0 ** -k]
            upper, _ = repelling_envelope(grid)
            slopes.append((upper.xi[1] - upper.xi[0]) / (upper.height[1] - upper.height[0]))
        assert slopes[0] > slopes[1] > slopes[2] > 0
        assert slopes[2] < 1e-3

    @pytest.mark.parametrize("bad", [0.0, 1.6, -0.2])
    def test_range(self, bad):
        with pytest.raises(DomainError):
            repelling_envelope([bad])


class TestLimitSweep:
    def test_pinned_sequence(self):
        report = limit_sweep(LIMIT_SWEEP_U0)
        assert report.strictly_decreasing
        np.testing.assert_allclose(report.distances, LIMIT_SWEEP_DISTANCES, atol=1e-9)
        assert all(b < 1e-9 for b in report.error_bounds)

    def test_single_entry(self):
        assert len(limit_sweep([0.1])) == 1

    def test_other_anchor(self):
        report = limit_sweep([0.1, 0.01], CriticalAnchor(1.0, 0.5), (-2.0, 0.0))
        assert report.strictly_decreasing

    def test_validation(self):
        with pytest.raises(DomainError):
            limit_sweep([0.1, 0.2])
        with pytest.raises(DomainError):
            limit_sweep([0.1], window=(1.0, -1.0))
        with pytest.raises(DomainError):
            limit_sweep([0.1], window=(-3.0, 0.5))  # beyond the vertical point at 0
        with pytest.raises(DomainError):
            limit_sweep([2.0], window=(-30.0, -29.0))  # far outside the short attracting curve
        with pytest.raises(DomainError):
            limit_sweep([0.1], CriticalAnchor(2.0))


def test_critical_inversion():
    psi = np.array([0.1, 0.7, 1.5])
    xs = np.array([critical_xi(p) for p in psi])
    np.testing.assert_allclose(critical_height_at(xs), 2 * np.sin(psi / 2), atol=1e-14)

import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

from qmap.classical import (
    ClassicalMap, DampingSymbol, TorusPoint, anosov_bound_ok, birkhoff_extremes,
    birkhoff_log_mean, cat_apply, cat_matrix, damping_from_config, deviation_distribution,
    geometric_mean, iterate, kick_apply, log_orbit_mean, sample_points, smoothstep_a1
)
from qmap.errors import SymbolError

A2_MEAN = ((1 + 2 ** -0.5) / 2) ** 2


def rk4_kick(alpha, q, p, steps=64):
    """Hamilton's equations for H = alpha/(4 pi^2) sin(2 pi q) over unit time"""
    def rhs(q, p):
        return 0.0, -alpha / (2 * np.pi) * np.cos(2 * np.pi * q)
    dt = 1.0 / steps
    for _ in range(steps):
        k1 = rhs(q, p)
        k2 = rhs(q + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1])
        k3 = rhs(q + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1])
        k4 = rhs(q + dt * k3[0], p + dt * k3[1])
        q += dt * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6
        p += dt * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6
    return q % 1.0, p % 1.0


class TestTorusPoint:

    def test_reduced_mod_one(self):
        x = TorusPoint(1.25, -0.25)
        assert (x.q, x.p) == (0.25, 0.75)

    def test_tiny_negative_wraps_into_unit_interval(self):
        x = TorusPoint(-1e-18, 0.0)
        assert 0.0 <= x.q < 1.0

    def test_distance_uses_shortest_representative(self):
        assert_allclose(TorusPoint(0.05, 0.0).distance(TorusPoint(0.95, 0.0)), 0.1)


class TestClassicalMap:

    @pytest.mark.parametrize('m', [1, 2, 3])
    def test_linear_part_is_hyperbolic_sl2z(self, m):
        A = cat_matrix(m)
        assert A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0] == 1
        assert A[0, 0] + A[1, 1] == 4 * m
        assert ClassicalMap(m).is_hyperbolic

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            ClassicalMap(m=0)
        with pytest.raises(ValueError):
            ClassicalMap(m=1, alpha=-0.1)

    def test_anosov_bound(self):
        assert anosov_bound_ok(ClassicalMap(1, 0.05))
        assert not anosov_bound_ok(ClassicalMap(1, 0.4))
        assert not anosov_bound_ok(ClassicalMap.identity_map())


class TestCatApply:

    @pytest.mark.parametrize('x, expected', [
        ((0.0, 0.0), (0.0, 0.0)),
        ((0.5, 0.5), (0.5, 0.5)),
        ((0.25, 0.0), (0.5, 0.75)),
    ])
    def test_examples(self, x, expected):
        y = cat_apply(1, TorusPoint(*x))
        assert_allclose((y.q, y.p), expected, atol=1e-15)


class TestKickApply:

    def test_zero_kick_is_identity(self):
        x = TorusPoint(0.3, 0.7)
        assert kick_apply(0.0, x) == x

    def test_kick_vanishes_where_cosine_does(self):
        y = kick_apply(0.05, TorusPoint(0.25, 0.1))
        assert_allclose((y.q, y.p), (0.25, 0.1), atol=1e-15)

    def test_closed_form_against_integrator(self):
        y = kick_apply(0.05, TorusPoint(0.0, 0.5))
        assert_allclose(y.p, 0.5 - 0.05 / (2 * np.pi), atol=1e-15)
        assert_allclose((y.q, y.p), rk4_kick(0.05, 0.0, 0.5), atol=1e-12)

    def test_random_points_against_integrator(self, rng):
        for q, p in rng.random((5, 2)):
            y = kick_apply(0.2, TorusPoint(q, p))
            assert y.distance(TorusPoint(*rk4_kick(0.2, q, p))) < 1e-12


class TestIterate:

    def test_zero_steps(self, kicked):
        x = TorusPoint(0.1, 0.2)
        assert iterate(kicked, x, 0) == x

    def test_two_cat_steps(self, cat):
        y = iterate(cat, TorusPoint(0.25, 0.0), 2)
        assert_allclose((y.q, y.p), (0.75, 0.0), atol=1e-15)

    def test_inverse_undoes_forward(self, kicked, rng):
        for q, p in rng.random((10, 2)):
            x = TorusPoint(q, p)
            assert iterate(kicked, iterate(kicked, x, 6), -6).distance(x) < 1e-12

    def test_call_is_one_step(self, kicked):
        x = TorusPoint(0.3, 0.4)
        assert kicked(x) == iterate(kicked, x, 1)


class TestDampingSymbol:

    def test_a2_values_and_range(self):
        a = DampingSymbol.a2()
        assert_allclose(a(np.array([0.0, 0.25, 0.5, 0.75])), [1.0, 0.5, 1.0, 0.5])
        assert (a.a_minus, a.a_plus) == (0.5, 1.0)

    def test_a1_plateaus(self):
        a = DampingSymbol.a1()
        assert_allclose(a(np.array([0.0, 0.1, 0.4, 0.5, 0.6, 0.9])),
                        [1 / 16, 1 / 16, 1.0, 1.0, 1.0, 1 / 16])
        assert_allclose((a.a_minus, a.a_plus), (1 / 16, 1.0))

    def test_smoothstep_is_continuous(self):
        edges = np.array([1 / 6, 1 / 3, 2 / 3, 5 / 6])
        assert_allclose(smoothstep_a1(edges - 1e-9), smoothstep_a1(edges + 1e-9), atol=1e-6)

    @pytest.mark.parametrize('value', [0.0, -0.5, 1.5])
    def test_constant_out_of_range(self, value):
        with pytest.raises(SymbolError):
            DampingSymbol.constant(value)

    def test_fourier_range_checked_on_grid(self):
        with pytest.raises(SymbolError):
            DampingSymbol.fourier(0.5, [(1, 1, 0.6, 0.0)])
        a = DampingSymbol.fourier(0.7, [(1, 1, 0.1, 0.0)])
        assert not a.is_q_only
        assert_allclose((a.a_minus, a.a_plus), (0.6, 0.8), atol=1e-9)

    def test_table_interpolates_its_samples(self):
        values = [1.0, 0.5, 0.75, 0.5]
        a = DampingSymbol.table(values)
        assert_allclose(a(np.arange(4) / 4), values, atol=1e-14)

    def test_unknown_kind(self):
        with pytest.raises(SymbolError):
            damping_from_config({'kind': 'gaussian'})

    def test_from_config(self):
        assert damping_from_config({'kind': 'constant', 'value': 0.3}).params == (0.3,)
        assert damping_from_config({'kind': 'a1', 'plateau': 0.25}).params == (0.25,)


class TestGeometricMean:

    def test_constant(self):
        assert geometric_mean(DampingSymbol.constant(0.4)) == 0.4

    def test_a2_matches_closed_form(self, a2):
        assert_allclose(geometric_mean(a2), A2_MEAN, atol=1e-4)
        assert_allclose(geometric_mean(a2), 0.7286, atol=1e-3)

    def test_a1_is_square_root_of_plateau(self, a1):
        assert_allclose(geometric_mean(a1), 0.25, atol=5e-3)

    def test_grid_too_small(self, a2):
        with pytest.raises(ValueError):
            geometric_mean(a2, grid_points=32)

    def test_general_symbol_uses_2d_quadrature(self):
        a = DampingSymbol.fourier(0.7, [(1, 1, 0.1, 0.0)])
        # log-mean of 0.7 + 0.1 cos t over a period
        expected = math.log((0.7 + math.sqrt(0.7 ** 2 - 0.1 ** 2)) / 2)
        assert_allclose(math.log(geometric_mean(a, grid_points=256)), expected, atol=1e-12)


class TestBirkhoff:

    def test_constant_damping(self, kicked):
        a = DampingSymbol.constant(0.3)
        assert_allclose(birkhoff_log_mean(a, kicked, TorusPoint(0.1, 0.9), 7), math.log(0.3))

    def test_fixed_point_of_pure_cat(self, cat, a2):
        assert_allclose(birkhoff_log_mean(a2, cat, TorusPoint(0.0, 0.0), 50), math.log(a2(0.0)))

    def test_orbit_starts_after_first_step(self, cat, a2):
        x = TorusPoint(0.25, 0.0)
        y = cat(x)
        assert_allclose(birkhoff_log_mean(a2, cat, x, 1), math.log(a2(y.q)))

    def test_long_orbit_approaches_log_mean(self, kicked, a2, rng):
        q, p = rng.random(2)
        value = birkhoff_log_mean(a2, kicked, TorusPoint(q, p), 100000)
        assert abs(value - 2 * math.log((1 + 2 ** -0.5) / 2)) < 0.01

    def test_seeded_orbits_converge(self, kicked, a2):
        points = sample_points(100, 11)
        values = log_orbit_mean(a2, kicked, points[:, 0], points[:, 1], 100000)
        close = np.abs(values - math.log(A2_MEAN)) < 0.02
        assert np.count_nonzero(close) >= 95

    def test_word_length_must_be_positive(self, kicked, a2):
        with pytest.raises(ValueError):
            log_orbit_mean(a2, kicked, 0.1, 0.2, 0)

    def test_extremes_bracket_the_mean(self, kicked, a2):
        lo, hi = birkhoff_extremes(a2, kicked, 10, grid_points=64)
        assert 0.5 <= lo < A2_MEAN < hi <= 1.0


class TestDeviationDistribution:

    def test_constant_damping_gives_zeros(self, kicked):
        stats = deviation_distribution(DampingSymbol.constant(0.5), kicked, 10, 100, 1)
        assert stats.values.shape == (100,)
        assert not np.any(stats.values)
        assert stats.second_moment == 0.0

    def test_seeded_and_independent_of_workers(self, kicked, a2):
        one = deviation_distribution(a2, kicked, 5, 20000, 7, workers=1)
        three = deviation_distribution(a2, kicked, 5, 20000, 7, workers=3)
        assert np.array_equal(one.values, three.values)
        assert one.second_moment == three.second_moment
        other = deviation_distribution(a2, kicked, 5, 20000, 8)
        assert not np.array_equal(one.values, other.values)

    def test_sample_points_shape_and_range(self):
        points = sample_points(10000, 3)
        assert points.shape == (10000, 2)
        assert points.min() >= 0.0 and points.max() < 1.0

    def test_no_samples(self, kicked, a2):
        with pytest.raises(ValueError):
            deviation_distribution(a2, kicked, 5, 0, 1)

    @pytest.mark.slow
    def test_second_moment_stays_bounded(self, kicked, a2):
        moments = [deviation_distribution(a2, kicked, n, 100000, 20240601).second_moment
                   for n in (10, 20, 40, 80)]
        assert max(moments) <= 3 * moments[0]

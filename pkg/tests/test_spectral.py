import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

from qmap.classical import ClassicalMap, DampingSymbol, geometric_mean
from qmap.eigen import eigenvalues, singular_values
from qmap.quantization import (
    FourierSymbol, PropagatorSpec, damped_propagator, inverse_propagator, quantize_symbol
)
from qmap.spectral import (
    SpectrumResult, angular_moments, integrated_density, large_count, log_window, loglog_fit,
    quartile_indices, sn_operator, sn_symbol_defect, sn_values, sort_spectrum, spectrum,
    spectrum_of, strip_fraction, trace_sequence, turn_angles, weyl_inequality_check, width,
    window_fraction
)

SYNTHETIC_N = (100, 200, 400, 800, 1600, 3000)


def hermitian_sqrt(A):
    values, V = np.linalg.eigh(A)
    return (V * np.sqrt(np.clip(values, 0.0, None))) @ V.conj().T


class TestSpectrumResult:

    def test_sorted_by_modulus_then_argument(self):
        ordered = sort_spectrum([0.5, -1, 1j, 1])
        assert ordered.tolist() == [1, 1j, -1, 0.5]

    def test_turn_angles(self):
        assert_allclose(turn_angles(np.array([1, 1j, -1, -1j])), [0, 0.25, 0.5, 0.75])

    def test_arrays_are_read_only(self):
        s = SpectrumResult.from_eigenvalues([0.2, 0.3j])
        assert s.N == 2 and s.h == 0.5
        with pytest.raises(ValueError):
            s.moduli[0] = 1.0

    def test_undamped_spectrum_is_on_unit_circle(self, kicked):
        s = spectrum(PropagatorSpec(kicked, DampingSymbol.constant(1.0), 32))
        assert_allclose(s.moduli, 1.0, atol=1e-9)

    def test_constant_damping_scales_spectrum(self, kicked):
        spec = PropagatorSpec(kicked, DampingSymbol.constant(0.6), 32)
        s = spectrum(spec)
        assert_allclose(s.moduli, 0.6, atol=1e-9)
        assert s.provenance == spec.digest()
        assert not s.flagged

    @pytest.mark.parametrize('damping', ['a1', 'a2'])
    def test_annulus(self, kicked, damping):
        a = getattr(DampingSymbol, damping)()
        spec = PropagatorSpec(kicked, a, 128)
        s = spectrum(spec)
        diagonal = spec.damping_diagonal()
        assert np.all(np.diff(s.moduli) <= 0)
        assert s.moduli.min() >= diagonal.min() - 1e-8
        assert s.moduli.max() <= diagonal.max() + 1e-8

    def test_inverse_spectrum_is_reciprocal(self, make_spec):
        spec = make_spec(64)
        forward = spectrum(spec).eigenvalues
        backward = eigenvalues(inverse_propagator(spec)).values
        for value in 1.0 / forward:
            assert np.min(np.abs(backward - value)) <= 1e-8 * abs(value)

    def test_spectrum_of_plain_array(self):
        s = spectrum_of(np.diag([0.1, 2.0, -0.5]))
        assert_allclose(s.moduli, [2.0, 0.5, 0.1], atol=1e-14)


class TestSn:

    def test_undamped_is_identity(self, kicked):
        S = sn_operator(PropagatorSpec(kicked, DampingSymbol.constant(1.0), 24), 2)
        assert S.role == 'sn'
        assert_allclose(S.entries, np.eye(24), atol=1e-9)

    def test_first_power_gives_singular_values(self, make_spec):
        spec = make_spec(48)
        assert_allclose(sn_values(spec, 1), singular_values(damped_propagator(spec)), atol=1e-9)

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_positive_and_bounded(self, make_spec, n):
        values = sn_values(make_spec(128), n)
        assert values.min() > 0
        assert values.max() <= 1 + 10 / 128

    def test_n_must_be_positive(self, make_spec):
        with pytest.raises(ValueError):
            sn_operator(make_spec(8), 0)

    def test_constant_damping_has_no_defect(self, kicked):
        spec = PropagatorSpec(kicked, DampingSymbol.constant(0.4), 32)
        assert sn_symbol_defect(spec, 2) < 1e-10

    def test_pure_cat_defect_matches_square_root(self, cat, a2):
        N = 64
        spec = PropagatorSpec(cat, a2, N)
        transported = quantize_symbol(N, FourierSymbol.from_modes(
            {(0, 0): 0.75, (4, -2): 0.125, (-4, 2): 0.125})).entries
        squared = quantize_symbol(N, FourierSymbol.from_modes(
            {(0, 0): 19 / 32, (4, -2): 3 / 16, (-4, 2): 3 / 16,
             (8, -4): 1 / 64, (-8, 4): 1 / 64})).entries
        expected = np.linalg.norm(hermitian_sqrt(squared) - transported, 2)
        assert abs(sn_symbol_defect(spec, 1) - expected) <= 1e-9


class TestWeylInequalities:

    def test_jordan_block(self):
        J = np.diag(np.ones(7), 1)
        report = weyl_inequality_check(SpectrumResult.from_eigenvalues(np.zeros(8)), J, 1)
        assert report.passed
        assert np.all(np.isinf(report.slack))

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_damped_map(self, make_spec, n):
        spec = make_spec(64)
        report = weyl_inequality_check(spectrum(spec), spec, n)
        assert report.passed
        assert report.min_slack >= -1e-8 * 64
        # full products both equal |det M|
        assert abs(report.slack[-1]) <= 1e-8
        assert 1 <= report.worst_index() <= 64

    def test_dimension_mismatch(self, make_spec):
        with pytest.raises(ValueError):
            weyl_inequality_check(spectrum(make_spec(8)), make_spec(16), 1)


class TestStatistics:

    def test_strip_between_damping_extremes(self, make_spec):
        spec = make_spec(64)
        s = spectrum(spec)
        a = spec.damping_diagonal()
        assert strip_fraction(s, a.min(), a.max(), tolerance=1e-8) == 1.0
        assert strip_fraction(s, 1.1, 1.2) == 0.0
        with pytest.raises(ValueError):
            strip_fraction(s, 0.8, 0.7)

    def test_width_example(self):
        s = SpectrumResult.from_eigenvalues([0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2])
        assert quartile_indices(8) == (2, 6)
        assert_allclose(width(s), 0.4)

    def test_width_of_unitary_spectrum(self, kicked):
        s = spectrum(PropagatorSpec(kicked, DampingSymbol.constant(1.0), 16))
        assert abs(width(s)) <= 1e-9

    def test_width_needs_four_values(self):
        with pytest.raises(ValueError):
            width(SpectrumResult.from_eigenvalues([1, 2, 3]))

    def test_angular_moments_of_quarter_turns(self):
        s = SpectrumResult.from_eigenvalues([1, 1j, -1, -1j])
        moments = angular_moments(s, 4)
        assert moments[0] == 1 + 0j
        assert_allclose(np.abs(moments[1:4]), 0.0, atol=1e-12)
        assert_allclose(moments[4], 1.0)

    def test_angular_moments_bounded(self, make_spec):
        moments = angular_moments(spectrum(make_spec(64)), 5)
        assert len(moments) == 6
        assert max(abs(m) for m in moments) <= 1.0 + 1e-12

    def test_trace_of_non_ergodic_control(self):
        spec = PropagatorSpec(ClassicalMap.identity_map(), DampingSymbol.constant(1.0), 16)
        assert_allclose(trace_sequence(spec, 4), [1, 1, 1, 1])

    def test_trace_bounded_by_norm(self, make_spec):
        spec = make_spec(64)
        traces = trace_sequence(spec, 4)
        assert len(traces) == 4
        assert all(abs(t) <= spec.damping.a_plus for t in traces)

    def test_large_count(self, make_spec, a2):
        s = spectrum(make_spec(64))
        mean = geometric_mean(a2)
        assert large_count(s, mean, a2.a_plus - mean + 0.01) == 0.0
        assert 0.0 <= large_count(s, mean, 0.15) <= 1.0
        with pytest.raises(ValueError):
            large_count(s, mean, 0.0)

    def test_log_window(self):
        assert_allclose(log_window(1000, 0.0), math.log(1000) ** -0.5)
        with pytest.raises(ValueError):
            log_window(1000, 0.5)
        s = SpectrumResult.from_eigenvalues([0.7] * 4 + [2.0] * 4)
        assert window_fraction(s, 0.7, 0.1) == 0.5

    def test_integrated_density(self):
        x, levels = integrated_density([0.3, 0.1, 0.2])
        assert x.tolist() == [0.1, 0.2, 0.3]
        assert_allclose(levels, [1 / 3, 2 / 3, 1.0])
        with pytest.raises(ValueError):
            integrated_density([])


class TestLogLogFit:

    @pytest.mark.parametrize('A, B', [(2.0, 0.5), (3.0, 1.0)])
    def test_recovers_exact_model(self, A, B):
        fit = loglog_fit([(N, A * math.log(N) ** -B) for N in SYNTHETIC_N])
        assert_allclose((fit.A, fit.B), (A, B), atol=1e-9)
        assert fit.residual < 1e-12
        assert_allclose(fit.predict(500), A * math.log(500) ** -B)

    def test_noisy_model_reports_residual(self, rng):
        points = [(N, 2 * math.log(N) ** -0.5 * (1 + 0.01 * e))
                  for N, e in zip(SYNTHETIC_N, rng.standard_normal(len(SYNTHETIC_N)))]
        fit = loglog_fit(points)
        assert fit.residual > 0
        assert fit.stderr_B > 0
        assert abs(fit.B - 0.5) < 0.5

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            loglog_fit([(100, 0.5), (200, 0.4)])

    def test_needs_positive_widths(self):
        with pytest.raises(ValueError):
            loglog_fit([(100, 0.5), (200, 0.0), (400, 0.3)])

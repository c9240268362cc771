"""Trend checks at the grid sizes of the published figures; minutes per test."""

from functools import lru_cache

import numpy as np
import pytest

from qmap.classical import ClassicalMap, DampingSymbol, geometric_mean
from qmap.quantization import PropagatorSpec
from qmap.spectral import (
    angular_moments, large_count, loglog_fit, sn_symbol_defect, spectrum, strip_fraction,
    trace_sequence, weyl_inequality_check, width
)

pytestmark = pytest.mark.slow

KICKED = ClassicalMap(m=1, alpha=0.05)
DAMPINGS = {'a1': DampingSymbol.a1(), 'a2': DampingSymbol.a2()}


def spec_for(name, N):
    return PropagatorSpec(KICKED, DAMPINGS[name], N)


@lru_cache(maxsize=None)
def spectrum_for(name, N):
    return spectrum(spec_for(name, N))


@pytest.mark.parametrize('N', [128, 512])
def test_annulus_bounds(N):
    moduli = spectrum_for('a2', N).moduli
    assert moduli.min() >= 0.5 - 1e-8
    assert moduli.max() <= 1.0 + 1e-8


@pytest.mark.parametrize('n', [1, 2, 3])
def test_weyl_inequalities(n):
    report = weyl_inequality_check(spectrum_for('a2', 256), spec_for('a2', 256), n)
    assert report.min_slack >= -1e-8 * 256


def test_concentration_near_mean():
    mean = geometric_mean(DAMPINGS['a2'])
    for N in (200, 500, 1000, 2100):
        s = spectrum_for('a2', N)
        assert strip_fraction(s, mean - 0.1, mean + 0.1) == 1.0, N
        assert width(s) < 0.05, N


@pytest.mark.parametrize('name', ['a1', 'a2'])
def test_angular_equidistribution(name):
    small, large = (angular_moments(spectrum_for(name, N), 5) for N in (128, 1024))
    for k in range(1, 6):
        assert abs(large[k]) <= 0.6 * abs(small[k]), k
    small, large = (trace_sequence(spec_for(name, N), 5) for N in (128, 1024))
    for k in range(5):
        assert abs(large[k]) <= 0.6 * abs(small[k]), k + 1


def test_width_decay():
    grid = (200, 400, 800, 1600, 2100)
    widths = [width(spectrum_for('a2', N)) for N in grid]
    assert widths[-1] < widths[0]
    fit = loglog_fit(list(zip(grid, widths)))
    assert fit.B > 0
    assert np.isfinite(fit.residual)


def test_large_eigenvalues_thin_out():
    mean = geometric_mean(DAMPINGS['a2'])
    for N in (200, 500, 1000, 2100):
        s = spectrum_for('a2', N)
        assert large_count(s, mean, 0.15) == 0.0, N
        assert 0.0 < large_count(s, mean, 0.05) < 0.5, N


def test_s1_is_exact_egorov_image():
    assert sn_symbol_defect(spec_for('a2', 128), 1) < 1e-10


def test_s2_converges_to_birkhoff_symbol():
    coarse = sn_symbol_defect(spec_for('a2', 128), 2)
    fine = sn_symbol_defect(spec_for('a2', 512), 2)
    assert fine <= 0.7 * coarse

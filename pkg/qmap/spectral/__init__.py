"""
    Spectral Statistics Package
    Sorted spectra, S_n operators and the Weyl-inequality check, strip and window
    fractions, width, angular moments, traces, large-eigenvalue counts and the width fit
"""

from .result import (
    SpectrumResult, spectrum, spectrum_of, sort_spectrum, propagator_of, turn_angles
)
from .sn import (
    WeylReport, sn_operator, sn_values, sn_symbol, sn_symbol_defect, weyl_inequality_check
)
from .statistics import (
    strip_fraction, width, angular_moments, trace_sequence, large_count, window_fraction,
    log_window, integrated_density, quartile_indices
)
from .fit import WidthFit, loglog_fit

__all__ = [
    'SpectrumResult', 'spectrum', 'spectrum_of', 'sort_spectrum', 'propagator_of', 'turn_angles',
    'WeylReport', 'sn_operator', 'sn_values', 'sn_symbol', 'sn_symbol_defect',
    'weyl_inequality_check',
    'strip_fraction', 'width', 'angular_moments', 'trace_sequence', 'large_count',
    'window_fraction', 'log_window', 'integrated_density', 'quartile_indices',
    'WidthFit', 'loglog_fit'
]

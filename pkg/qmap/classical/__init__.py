"""
    Classical Dynamics Package
    Exact kicked cat map dynamics on the torus, damping symbols, and the Birkhoff
    and large-deviation statistics the spectral laws are stated in
"""

from .torus import (
    TorusPoint, ClassicalMap, ANOSOV_ALPHA, cat_matrix, cat_apply, kick_apply,
    iterate, orbit, map_jacobian, anosov_bound_ok, wrap_unit
)
from .damping import DampingSymbol, damping_from_config, smoothstep_a1
from .birkhoff import (
    BirkhoffStats, birkhoff_log_mean, birkhoff_average, log_orbit_mean, geometric_mean,
    log_geometric_mean, deviation_distribution, sample_points, birkhoff_extremes
)
from .largedev import (
    LargeDevParams, rate_estimate, rate_table, is_monotone, expansion_rate,
    interpolate_rate, exponent_from_rate, ehrenfest_constant, large_dev_params
)

__all__ = [
    'TorusPoint', 'ClassicalMap', 'ANOSOV_ALPHA', 'cat_matrix', 'cat_apply', 'kick_apply',
    'iterate', 'orbit', 'map_jacobian', 'anosov_bound_ok', 'wrap_unit',
    'DampingSymbol', 'damping_from_config', 'smoothstep_a1',
    'BirkhoffStats', 'birkhoff_log_mean', 'birkhoff_average', 'log_orbit_mean',
    'geometric_mean', 'log_geometric_mean', 'deviation_distribution', 'sample_points',
    'birkhoff_extremes',
    'LargeDevParams', 'rate_estimate', 'rate_table', 'is_monotone', 'expansion_rate',
    'interpolate_rate', 'exponent_from_rate', 'ehrenfest_constant', 'large_dev_params'
]

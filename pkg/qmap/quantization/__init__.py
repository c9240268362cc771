"""
    Torus Quantization Package
    Weyl translations, symbol quantization, cat/kick/damped propagators and the
    Egorov and functional-calculus defect measurements
"""

from ..operator import DenseOperator, encode_array, decode_array
from .weyl import (
    FourierSymbol, weyl_translation, weyl_phase, root_of_unity, quantize_symbol,
    quantize_fourier, normalized_trace, default_cutoff
)
from .propagator import (
    PropagatorSpec, cat_propagator, kick_propagator, unitary_propagator,
    damped_propagator, inverse_propagator
)
from .defects import egorov_defect, functional_calculus_defect, hermitian_function

__all__ = [
    'DenseOperator', 'encode_array', 'decode_array',
    'FourierSymbol', 'weyl_translation', 'weyl_phase', 'root_of_unity', 'quantize_symbol',
    'quantize_fourier', 'normalized_trace', 'default_cutoff',
    'PropagatorSpec', 'cat_propagator', 'kick_propagator', 'unitary_propagator',
    'damped_propagator', 'inverse_propagator',
    'egorov_defect', 'functional_calculus_defect', 'hermitian_function'
]

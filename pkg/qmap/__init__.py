"""
Damped Quantum Maps Package

Numerical laboratory for damped quantum maps M = Op_h(a) U_h(kappa) on the 2-torus:
propagator assembly, non-normal spectra and the spectral statistics the semiclassical
Weyl laws are stated in.

Modules:
    main: command-line entry point
    utils: log helpers
    data: command-line help text
    errors: exception hierarchy
    operator: DenseOperator and its binary layout

Subpackages:
    classical: torus dynamics, damping symbols, Birkhoff and large-deviation statistics
    quantization: Weyl quantization, propagators, Egorov and functional-calculus defects
    eigen: Hessenberg, shifted QR, Hermitian eigendecomposition, singular values
    spectral: spectrum statistics and the width fit
    harness: configs, cache, runner and figures
    profiling: performance sampling and the check ledger
    style: figure themes and fonts
"""

__version__ = '1.0.0'

from .main import main

__all__ = ['main', 'classical', 'quantization', 'eigen', 'spectral', 'harness', 'profiling',
           'style', 'utils', 'errors', 'operator']

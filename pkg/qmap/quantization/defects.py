import numpy as np

from ..classical.damping import DampingSymbol
from ..eigen import hermitian_spectrum, operator_norm
from ..operator import as_matrix
from .weyl import FourierSymbol, default_cutoff, quantize_symbol


def egorov_defect(N, f, U, cmap, fourier_cutoff=None):
    """||U^-1 Op_h(f) U - Op_h(f o kappa)||"""
    cutoff = default_cutoff(N) if fourier_cutoff is None else fourier_cutoff
    if not isinstance(f, FourierSymbol):
        f = FourierSymbol.from_modes(f.fourier_coefficients())
    U = as_matrix(U)
    evolved = U.conj().T @ quantize_symbol(N, f, cutoff).entries @ U
    transported = quantize_symbol(N, f.compose(cmap, cutoff), cutoff).entries
    return operator_norm(evolved - transported)


def hermitian_function(A, g):
    """g(A) through the Hermitian eigendecomposition"""
    values, V = hermitian_spectrum(A)
    return (V * g(values)[None, :]) @ V.conj().T


def functional_calculus_defect(N, a, g, fourier_cutoff=None):
    """||g(Op_h(a)) - Op_h(g o a)||"""
    lhs = hermitian_function(quantize_symbol(N, a, fourier_cutoff).entries, g)
    if isinstance(a, DampingSymbol) and a.is_q_only:
        rhs = np.diag(g(a(np.arange(N) / N))).astype(np.complex128)
    else:
        cutoff = default_cutoff(N) if fourier_cutoff is None else fourier_cutoff
        composed = FourierSymbol.from_function(lambda q, p: g(np.real(a(q, p))), cutoff)
        rhs = quantize_symbol(N, composed, cutoff).entries
    return operator_norm(lhs - rhs)

"""
    Dense Eigen Package
    In-repo complex linear algebra: Hessenberg reduction, shifted QR for
    non-normal spectra, Hermitian eigendecomposition and singular values
"""

from .hessenberg import hessenberg_reduce, balance_matrix
from .schur import EigenReport, eigenvalues
from .hermitian import hermitian_spectrum
from .svd import singular_values, operator_norm, determinant, log_abs_determinant

__all__ = [
    'hessenberg_reduce', 'balance_matrix', 'EigenReport', 'eigenvalues',
    'hermitian_spectrum', 'singular_values', 'operator_norm', 'determinant',
    'log_abs_determinant'
]

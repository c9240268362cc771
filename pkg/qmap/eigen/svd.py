import numpy as np

from .hessenberg import _working_copy
from .hermitian import hermitian_spectrum
from .kernels import lu_logdet_kernel


def singular_values(A):
    """Descending square roots of the spectrum of A^H A, roundoff negatives clipped"""
    M = _working_copy(A)
    gram = M.conj().T @ M
    values, _ = hermitian_spectrum(gram, vectors=False)
    return np.sqrt(np.clip(values, 0.0, None))[::-1]


def operator_norm(A):
    return float(singular_values(A)[0])


def log_abs_determinant(A):
    """(log |det A|, phase) from LU with partial pivoting"""
    logabs, phase = lu_logdet_kernel(_working_copy(A))
    return float(logabs), complex(phase)


def determinant(A):
    logabs, phase = log_abs_determinant(A)
    if np.isneginf(logabs):
        return 0j
    return phase * np.exp(logabs)

import numpy as np

from ..operator import DenseOperator, as_matrix
from .kernels import hessenberg_kernel

RADIX = 2.0


def _working_copy(A):
    M = np.array(as_matrix(A), dtype=np.complex128, order='C')
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError('matrix entries must be finite')
    return M


def hessenberg_reduce(A):
    """(H, Q) with H upper Hessenberg, Q unitary and A = Q H Q^H"""
    H = _working_copy(A)
    Q = np.eye(H.shape[0], dtype=np.complex128)
    hessenberg_kernel(H, Q, True)
    return DenseOperator(H), DenseOperator(Q)


def hessenberg_values_only(A):
    H = _working_copy(A)
    hessenberg_kernel(H, np.empty((1, 1), dtype=np.complex128), False)
    return H


def balance_matrix(A):
    """Diagonal similarity by powers of two equalising row and column norms"""
    M = _working_copy(A)
    n = M.shape[0]
    sqrdx = RADIX * RADIX
    done = False
    while not done:
        done = True
        for i in range(n):
            c = np.sum(np.abs(M[:, i])) - abs(M[i, i])
            r = np.sum(np.abs(M[i, :])) - abs(M[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= RADIX
                c *= sqrdx
            g = r * RADIX
            while c > g:
                f /= RADIX
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                M[i, :] /= f
                M[:, i] *= f
    return M

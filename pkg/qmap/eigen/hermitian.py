import numpy as np

from ..errors import NumericalError
from .hessenberg import _working_copy
from .kernels import hessenberg_kernel, tridiagonal_ql_kernel

HERMITIAN_TOLERANCE = 1e-10
QL_SWEEPS = 30


def hermitian_spectrum(A, vectors=True):
    """Ascending real eigenvalues and (optionally) orthonormal eigenvectors as columns.

    Householder tridiagonalisation, a diagonal phase change to a real symmetric
    tridiagonal matrix, then implicit QL.
    """
    M = _working_copy(A)
    n = M.shape[0]
    norm = np.linalg.norm(M)
    if np.linalg.norm(M - M.conj().T) > HERMITIAN_TOLERANCE * max(norm, 1.0):
        raise ValueError('matrix is not Hermitian')
    H = np.ascontiguousarray(0.5 * (M + M.conj().T))
    Q = np.eye(n, dtype=np.complex128) if vectors else np.empty((1, 1), dtype=np.complex128)
    hessenberg_kernel(H, Q, vectors)

    d = H.diagonal().real.copy()
    sub = 0.5 * (np.diagonal(H, -1) + np.diagonal(H, 1).conj())
    e = np.zeros(n)
    e[:n - 1] = np.abs(sub)
    phases = np.ones(n, dtype=np.complex128)
    for k in range(n - 1):
        phases[k + 1] = phases[k] * sub[k] / e[k] if e[k] > 0 else phases[k]

    Zt = np.eye(n) if vectors else np.empty((1, 1))
    if not tridiagonal_ql_kernel(d, e, Zt, vectors, QL_SWEEPS):
        raise NumericalError('tridiagonal QL did not converge')

    order = np.argsort(d, kind='stable')
    if not vectors:
        return d[order], None
    V = Q @ (phases[:, None] * Zt.T)
    return d[order], V[:, order]

from dataclasses import dataclass

import numpy as np

from ..errors import EigenConvergenceError
from .hessenberg import balance_matrix, hessenberg_values_only, _working_copy
from .kernels import shifted_qr_kernel

SWEEPS_PER_DIMENSION = 30
EXCEPTIONAL_EVERY = 10
DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class EigenReport:
    values: np.ndarray
    max_residual: float
    iterations: int
    converged: bool = True
    flagged: bool = False

    def __len__(self):
        return len(self.values)


def eigenvalues(A, tolerance=DEFAULT_TOLERANCE, balance=False):
    """Eigenvalues of a general complex matrix via Hessenberg form and shifted QR"""
    M = balance_matrix(A) if balance else _working_copy(A)
    n = M.shape[0]
    scale = float(np.linalg.norm(M))
    H = hessenberg_values_only(M)
    values, iterations, converged, unresolved, residual = shifted_qr_kernel(
        H, SWEEPS_PER_DIMENSION * n, EXCEPTIONAL_EVERY
    )
    if not converged:
        raise EigenConvergenceError(
            f"shifted QR did not converge after {iterations} sweeps "
            f"({unresolved + 1} of {n} eigenvalues unresolved)",
            partial=values[unresolved + 1:],
            iterations=int(iterations)
        )
    relative = residual / scale if scale > 0 else 0.0
    return EigenReport(values, float(relative), int(iterations), True, bool(relative > tolerance))

import hashlib
from dataclasses import dataclass

import numpy as np

from ..classical.damping import DampingSymbol
from ..classical.torus import ClassicalMap
from ..errors import NumericalError, SymbolError
from ..operator import DenseOperator
from .weyl import quantize_symbol, root_of_unity


@dataclass(frozen=True, eq=False)
class PropagatorSpec:
    map: ClassicalMap
    damping: DampingSymbol
    N: int

    def __post_init__(self):
        if int(self.N) < 2:
            raise ValueError(f"propagator dimension must be >= 2, got {self.N}")
        if not self.damping.a_minus > 0:
            raise SymbolError('non-invertible damping')

    @property
    def h(self):
        return 1.0 / self.N

    def describe(self, alpha_text=None):
        """Canonical text of (map, damping, N); alpha_text keeps the decimal as written"""
        alpha = alpha_text if alpha_text is not None else repr(float(self.map.alpha))
        linear = 'identity' if self.map.identity else f"m={self.map.m}"
        return f"{linear}|alpha={alpha}|damping={self.damping.describe()}|N={self.N}"

    def digest(self):
        return hashlib.sha256(self.describe().encode('utf-8')).hexdigest()

    def damping_diagonal(self):
        """a(j/N) for q-only damping"""
        return self.damping(np.arange(self.N) / self.N)


def cat_propagator(N, m):
    """U_h(A)_jk = sqrt(h) exp(2 i pi h [m k^2 - k j + m j^2])"""
    if N < 2:
        raise ValueError(f"propagator dimension must be >= 2, got {N}")
    j = np.arange(N, dtype=np.int64)[:, None]
    k = np.arange(N, dtype=np.int64)[None, :]
    exponent = (m * k * k - k * j + m * j * j) % N
    return DenseOperator(root_of_unity(exponent, N) / np.sqrt(N), 'propagator')


def kick_phases(N, alpha):
    """Diagonal of exp(-(2 i pi / h) Op_h(H)) for H = alpha / (4 pi^2) sin(2 pi q)"""
    j = np.arange(N)
    return np.exp(-1j * N * alpha / (2 * np.pi) * np.sin(2 * np.pi * j / N))


def kick_propagator(N, alpha):
    return DenseOperator.diagonal(kick_phases(N, alpha), 'propagator')


def unitary_propagator(N, cmap):
    """U_h(kappa) = kick . cat, the kick acting after the cat map"""
    if cmap.identity:
        U = np.eye(N, dtype=np.complex128)
    else:
        U = cat_propagator(N, cmap.m).entries
    if cmap.alpha != 0:
        U = kick_phases(N, cmap.alpha)[:, None] * U
    return DenseOperator(U, 'propagator')


def damped_propagator(spec):
    """M_h(a, kappa) = Op_h(a) U_h(kappa)"""
    U = unitary_propagator(spec.N, spec.map).entries
    if spec.damping.is_q_only:
        a = spec.damping_diagonal()
        if not np.all(a > 0):
            raise SymbolError('non-invertible damping')
        return DenseOperator(a[:, None] * U, 'propagator')
    return DenseOperator(quantize_symbol(spec.N, spec.damping).entries @ U, 'propagator')


def inverse_propagator(spec):
    """M^-1 = U^-1 Op_h(a)^-1"""
    U = unitary_propagator(spec.N, spec.map).entries
    if spec.damping.is_q_only:
        a = spec.damping_diagonal()
        if not np.all(a > 0):
            raise SymbolError('non-invertible damping')
        return DenseOperator(U.conj().T / a[None, :], 'inverse')
    M = damped_propagator(spec).entries
    try:
        inverse = np.linalg.solve(M, np.eye(spec.N, dtype=np.complex128))
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"singular damped propagator: {e}") from e
    return DenseOperator(inverse, 'inverse')

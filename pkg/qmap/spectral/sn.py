from dataclasses import dataclass

import numpy as np

from ..classical import birkhoff_average
from ..eigen import hermitian_spectrum, operator_norm
from ..operator import DenseOperator
from ..quantization import FourierSymbol, PropagatorSpec, default_cutoff, quantize_fourier
from .result import propagator_of

EIGENVALUE_FLOOR = 1e-300
WEYL_SLACK = 1e-8


def _power_gram(M, n):
    """(M^n)^H M^n, symmetrised"""
    if n < 1:
        raise ValueError(f"S_n needs n >= 1, got {n}")
    P = M.power(n).entries
    G = P.conj().T @ P
    return 0.5 * (G + G.conj().T)


def sn_operator(spec, n):
    """S_n = (M^n^H M^n)^(1/2n), through the Hermitian eigendecomposition"""
    values, V = hermitian_spectrum(_power_gram(propagator_of(spec), n))
    roots = np.clip(values, EIGENVALUE_FLOOR, None) ** (1.0 / (2 * n))
    return DenseOperator((V * roots[None, :]) @ V.conj().T, 'sn')


def sn_values(spec, n):
    """Eigenvalues of S_n in decreasing order"""
    values, _ = hermitian_spectrum(_power_gram(propagator_of(spec), n), vectors=False)
    return (np.clip(values, EIGENVALUE_FLOOR, None) ** (1.0 / (2 * n)))[::-1]


def sn_symbol(spec, n, cutoff=None):
    """Fourier expansion of a_n, sampled on 4N points per axis"""
    cutoff = default_cutoff(spec.N) if cutoff is None else cutoff
    grid = 4 * spec.N
    axis = np.arange(grid) / grid
    qq, pp = np.meshgrid(axis, axis, indexing='ij')
    values = birkhoff_average(spec.damping, spec.map, qq, pp, n)
    return FourierSymbol.from_grid(values, cutoff)


def sn_symbol_defect(spec, n):
    """||S_n - Op_h(a_n)||"""
    S = sn_operator(spec, n)
    if spec.damping.is_constant:
        target = np.eye(spec.N) * spec.damping.params[0]
    else:
        target = quantize_fourier(spec.N, sn_symbol(spec, n)).entries
    return operator_norm(S.entries - target)


@dataclass(frozen=True, eq=False)
class WeylReport:
    n: int
    slack: np.ndarray
    min_slack: float
    passed: bool

    def worst_index(self):
        """1-based k where the slack is smallest"""
        return int(np.argmin(self.slack)) + 1


def weyl_inequality_check(eigs, spec, n):
    """Slack of prod_{i<=k} |lambda_i| <= prod_{i<=k} s_i^(n) in log form, for every k"""
    if isinstance(spec, PropagatorSpec) and eigs.N != spec.N:
        raise ValueError(f"spectrum has {eigs.N} values but the propagator has N={spec.N}")
    s = sn_values(spec, n)
    with np.errstate(divide='ignore'):
        log_lambda = np.cumsum(np.log(eigs.moduli))
    log_s = np.cumsum(np.log(s))
    slack = np.where(np.isneginf(log_lambda), np.inf, log_s - log_lambda)
    k = np.arange(1, len(slack) + 1)
    passed = bool(np.all(slack >= -WEYL_SLACK * k))
    return WeylReport(n, slack, float(np.min(slack)), passed)

from dataclasses import dataclass

import numpy as np

from ..eigen import eigenvalues
from ..operator import DenseOperator
from ..quantization import PropagatorSpec, damped_propagator
from ..utils import log_message

TWO_PI = 2 * np.pi


def sort_spectrum(values):
    """Decreasing modulus, ties broken by ascending argument in [0, 2pi)"""
    values = np.asarray(values, dtype=np.complex128)
    arguments = np.mod(np.angle(values), TWO_PI)
    order = np.lexsort((arguments, -np.abs(values)))
    return values[order]


def turn_angles(values):
    """Arguments as fractions of a full turn, in [0, 1)"""
    theta = np.mod(np.angle(values) / TWO_PI, 1.0)
    return np.where(theta >= 1.0, 0.0, theta)


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    N: int
    eigenvalues: np.ndarray
    moduli: np.ndarray
    angles: np.ndarray
    provenance: str = ''
    residual: float = 0.0
    flagged: bool = False

    @property
    def h(self):
        return 1.0 / self.N

    @classmethod
    def from_eigenvalues(cls, values, provenance='', residual=0.0, flagged=False):
        ordered = sort_spectrum(values)
        moduli = np.abs(ordered)
        moduli.setflags(write=False)
        angles = turn_angles(ordered)
        angles.setflags(write=False)
        ordered.setflags(write=False)
        return cls(len(ordered), ordered, moduli, angles, provenance, float(residual), flagged)


def spectrum_of(op, provenance='', balance=False):
    """SpectrumResult of an arbitrary operator"""
    report = eigenvalues(op, balance=balance)
    if report.flagged:
        log_message(f"eigensolver residual {report.max_residual:.3e} above tolerance "
                    f"({provenance or 'operator'})", 'WARNING')
    return SpectrumResult.from_eigenvalues(report.values, provenance, report.max_residual,
                                           report.flagged)


def spectrum(spec):
    """Eigenvalues of M_h(a, kappa) with multiplicity, sorted by decreasing modulus"""
    return spectrum_of(damped_propagator(spec), spec.digest())


def propagator_of(source):
    """M_h for a PropagatorSpec, or the operator itself"""
    if isinstance(source, PropagatorSpec):
        return damped_propagator(source)
    if isinstance(source, DenseOperator):
        return source
    return DenseOperator(source)

import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

import qmap.eigen.schur as schur
from qmap.eigen import (
    balance_matrix, determinant, eigenvalues, hermitian_spectrum, hessenberg_reduce,
    log_abs_determinant, operator_norm, singular_values
)
from qmap.errors import EigenConvergenceError

from conftest import random_complex, random_hermitian, random_unitary


def jordan_perturbed(N, eps):
    J = np.diag(np.ones(N - 1), -1).T.astype(np.complex128)
    J[N - 1, 0] = eps
    return J


def cubic_roots(A):
    """Real roots of det(A - x) for a Hermitian 3x3 A, trigonometric form"""
    tr = np.trace(A).real
    minors = 0.5 * (tr ** 2 - np.trace(A @ A).real)
    det = np.linalg.det(A).real
    b, c, d = -tr, minors, -det
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    r = 2 * math.sqrt(-p / 3)
    phi = math.acos(3 * q / (p * r))
    roots = [r * math.cos((phi - 2 * math.pi * k) / 3) - b / 3 for k in range(3)]
    return np.sort(roots)


def match_multisets(a, b):
    """Largest distance from a value of `a` to its nearest neighbour in `b`"""
    return max(np.min(np.abs(b - x)) for x in a)


class TestHessenberg:

    def test_reconstruction(self, rng):
        A = random_complex(rng, (5, 5))
        H, Q = hessenberg_reduce(A)
        norm = np.linalg.norm(A)
        assert np.abs(np.tril(H.entries, -2)).max() <= 1e-14 * norm
        assert np.linalg.norm(Q.entries.conj().T @ Q.entries - np.eye(5)) <= 1e-12
        assert np.linalg.norm(Q.entries @ H.entries @ Q.entries.conj().T - A) <= 1e-12 * norm

    def test_hermitian_becomes_tridiagonal(self, rng):
        A = random_hermitian(rng, 7)
        H, _ = hessenberg_reduce(A)
        assert np.abs(np.triu(H.entries, 2)).max() <= 1e-13 * np.linalg.norm(A)

    def test_two_by_two_unchanged(self, rng):
        A = random_complex(rng, (2, 2))
        H, Q = hessenberg_reduce(A)
        assert np.array_equal(H.entries, A)
        assert np.array_equal(Q.entries, np.eye(2))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            hessenberg_reduce(np.zeros((2, 3)))


class TestEigenvalues:

    def test_diagonal(self):
        report = eigenvalues(np.diag([1, 2j, -3]))
        assert match_multisets(np.array([1, 2j, -3]), report.values) <= 1e-12
        assert len(report) == 3 and not report.flagged

    def test_perturbed_jordan_block(self):
        values = eigenvalues(jordan_perturbed(8, 1e-8)).values
        assert_allclose(np.abs(values), 0.1, atol=1e-6)
        angles = np.sort(np.angle(values))
        assert_allclose(np.diff(angles), 2 * np.pi / 8, atol=1e-6)

    def test_unitary_input(self, rng):
        values = eigenvalues(random_unitary(rng, 16)).values
        assert_allclose(np.abs(values), 1.0, atol=1e-9)

    def test_similarity_invariance(self, rng):
        A = random_complex(rng, (32, 32))
        Q = random_unitary(rng, 32)
        before = eigenvalues(A).values
        after = eigenvalues(Q @ A @ Q.conj().T).values
        assert match_multisets(before, after) <= 1e-9

    def test_trace_and_determinant(self, rng):
        A = random_complex(rng, (64, 64))
        values = eigenvalues(A).values
        scale = np.linalg.norm(A)
        assert abs(values.sum() - np.trace(A)) <= 1e-8 * scale
        logabs, phase = log_abs_determinant(A)
        assert abs(np.sum(np.log(np.abs(values))) - logabs) <= 1e-8 * 64
        assert abs(np.prod(values / np.abs(values)) - phase) <= 1e-8

    def test_weyl_products(self, rng):
        for n in (4, 12, 24):
            A = random_complex(rng, (n, n))
            moduli = np.sort(np.abs(eigenvalues(A).values))[::-1]
            sigma = singular_values(A)
            gap = np.cumsum(np.log(sigma)) - np.cumsum(np.log(moduli))
            assert gap.min() >= -1e-9

    def test_residual_reported(self, rng):
        report = eigenvalues(random_complex(rng, (20, 20)))
        assert report.converged
        assert 0.0 <= report.max_residual <= 1e-10
        assert report.iterations > 0

    def test_balancing_keeps_spectrum(self, rng):
        D = np.diag(2.0 ** np.arange(0, 24, 4))
        A = D @ random_complex(rng, (6, 6)) @ np.linalg.inv(D)
        plain = eigenvalues(A).values
        balanced = eigenvalues(A, balance=True).values
        assert match_multisets(plain, balanced) <= 1e-8 * np.abs(plain).max()
        assert np.linalg.norm(balance_matrix(A)) <= np.linalg.norm(A)

    def test_sweep_budget_exhausted(self, rng, monkeypatch):
        monkeypatch.setattr(schur, 'SWEEPS_PER_DIMENSION', 0)
        with pytest.raises(EigenConvergenceError) as err:
            eigenvalues(random_complex(rng, (6, 6)))
        assert err.value.iterations == 0
        assert len(err.value.partial) < 6


class TestHermitianSpectrum:

    def test_cubic_oracle(self, rng):
        A = random_hermitian(rng, 3)
        values, _ = hermitian_spectrum(A, vectors=False)
        assert_allclose(values, cubic_roots(A), atol=1e-10)

    def test_eigenpairs(self, rng):
        A = random_hermitian(rng, 40)
        values, V = hermitian_spectrum(A)
        assert np.all(np.diff(values) >= 0)
        assert np.linalg.norm(V.conj().T @ V - np.eye(40)) <= 1e-10
        assert np.linalg.norm(A @ V - V * values[None, :]) <= 1e-10 * np.linalg.norm(A)

    def test_values_only(self, rng):
        A = random_hermitian(rng, 5)
        values, V = hermitian_spectrum(A, vectors=False)
        assert V is None
        assert_allclose(values, hermitian_spectrum(A)[0], atol=1e-12)

    def test_rejects_non_hermitian(self, rng):
        with pytest.raises(ValueError, match='not Hermitian'):
            hermitian_spectrum(random_complex(rng, (4, 4)))

    def test_one_by_one(self):
        values, V = hermitian_spectrum(np.array([[2.5]]))
        assert values.tolist() == [2.5]
        assert V.tolist() == [[1.0]]


class TestSingularValues:

    def test_unitary(self, rng):
        assert_allclose(singular_values(random_unitary(rng, 16)), 1.0, atol=1e-10)

    def test_diagonal(self):
        assert_allclose(singular_values(np.diag([3, -4j, 0])), [4, 3, 0], atol=1e-12)

    def test_against_svd(self, rng):
        A = random_complex(rng, (12, 12))
        assert_allclose(singular_values(A), np.linalg.svd(A, compute_uv=False), rtol=1e-9)
        assert_allclose(operator_norm(A), np.linalg.norm(A, 2), rtol=1e-10)

    def test_one_by_one(self):
        assert_allclose(singular_values(np.array([[-2j]])), [2.0])
        assert_allclose(operator_norm(np.array([[2.0]])), 2.0)

    def test_determinant(self):
        assert_allclose(determinant(np.array([[1, 2], [3, 4j]])), 4j - 6)
        assert determinant(np.zeros((3, 3))) == 0j
        assert log_abs_determinant(np.zeros((2, 2)))[0] == -math.inf

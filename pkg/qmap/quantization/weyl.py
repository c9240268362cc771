from dataclasses import dataclass

import numpy as np

from ..classical.damping import DampingSymbol
from ..operator import DenseOperator


def root_of_unity(k, M):
    """exp(2 i pi k / M) for integer arrays k, exact at quarter turns"""
    k = np.mod(np.asarray(k, dtype=np.int64), M)
    z = np.exp(2j * np.pi * k / M)
    if M % 4 == 0:
        quarter = M // 4
        z = np.where(k == 0, 1.0 + 0j, z)
        z = np.where(k == quarter, 1j, z)
        z = np.where(k == 2 * quarter, -1.0 + 0j, z)
        z = np.where(k == 3 * quarter, -1j, z)
    elif M % 2 == 0:
        z = np.where(k == 0, 1.0 + 0j, z)
        z = np.where(k == M // 2, -1.0 + 0j, z)
    else:
        z = np.where(k == 0, 1.0 + 0j, z)
    return z


def weyl_phase(m, n, N):
    """exp(-i pi m n / N), the Weyl-ordering phase of T_{m,n}"""
    return root_of_unity(-np.multiply(m, n, dtype=np.int64), 2 * N)


def weyl_translation(N, m, n):
    """T_{m,n} = Op_h(e_{mn}) with (T psi)_j = e^{-i pi mn/N} e^{2i pi mj/N} psi_{j-n}"""
    if N < 1:
        raise ValueError(f"dimension must be positive, got {N}")
    j = np.arange(N, dtype=np.int64)
    T = np.zeros((N, N), dtype=np.complex128)
    T[j, (j - n) % N] = weyl_phase(m, n, N) * root_of_unity(m * j, N)
    return DenseOperator(T)


@dataclass(frozen=True, eq=False)
class FourierSymbol:
    """f = sum f_mn e^{2i pi (m q - n p)} with |m|, |n| <= cutoff, stored as coeffs[m + c, n + c]"""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 2 or coeffs.shape[0] != coeffs.shape[1] or coeffs.shape[0] % 2 == 0:
            raise ValueError('Fourier table must be square with odd side 2*cutoff + 1')
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def cutoff(self):
        return (self.coeffs.shape[0] - 1) // 2

    @classmethod
    def from_modes(cls, modes):
        """From a {(m, n): coefficient} mapping"""
        c = max(max(abs(m), abs(n)) for m, n in modes)
        coeffs = np.zeros((2 * c + 1, 2 * c + 1), dtype=np.complex128)
        for (m, n), value in modes.items():
            coeffs[m + c, n + c] += value
        return cls(coeffs)

    @classmethod
    def mode(cls, m, n, amplitude=1.0):
        return cls.from_modes({(m, n): amplitude})

    @classmethod
    def from_grid(cls, values, cutoff):
        """Coefficients from samples values[a, b] = f(a/G, b/G) by 2-D FFT quadrature"""
        values = np.asarray(values)
        G = values.shape[0]
        if 2 * cutoff >= G:
            raise ValueError(f"grid of {G} points cannot resolve cutoff {cutoff}")
        F = np.fft.fft2(values) / (G * G)
        ks = np.arange(-cutoff, cutoff + 1)
        # e^{-2i pi (m q - n p)} pairs frequency m in q with -n in p
        return cls(F[np.ix_(ks % G, (-ks) % G)])

    @classmethod
    def from_function(cls, func, cutoff, grid=None):
        grid = grid or 4 * max(cutoff, 1)
        axis = np.arange(grid) / grid
        qq, pp = np.meshgrid(axis, axis, indexing='ij')
        return cls.from_grid(func(qq, pp), cutoff)

    def modes(self):
        c = self.cutoff
        idx = np.argwhere(self.coeffs != 0)
        return [(int(i - c), int(k - c), self.coeffs[i, k]) for i, k in idx]

    def __call__(self, q, p):
        q = np.asarray(q, dtype=float)
        p = np.asarray(p, dtype=float)
        value = np.zeros(np.broadcast(q, p).shape, dtype=np.complex128)
        for m, n, coefficient in self.modes():
            value = value + coefficient * np.exp(2j * np.pi * (m * q - n * p))
        return value

    def truncated(self, cutoff):
        c = self.cutoff
        if cutoff >= c:
            return self
        return FourierSymbol(self.coeffs[c - cutoff:c + cutoff + 1, c - cutoff:c + cutoff + 1])

    def compose(self, cmap, cutoff, grid=None):
        """f o kappa re-expanded on a grid of 4 * cutoff points per axis"""
        grid = grid or 4 * max(cutoff, 1)
        axis = np.arange(grid) / grid
        qq, pp = np.meshgrid(axis, axis, indexing='ij')
        q1, p1 = cmap.step(qq, pp)
        return FourierSymbol.from_grid(self(q1, p1), cutoff)


def default_cutoff(N):
    return N // 2


def quantize_fourier(N, symbol, fourier_cutoff=None):
    """Op_h(f) = sum f_mn T_mn, assembled diagonal band by diagonal band with an FFT"""
    cutoff = default_cutoff(N) if fourier_cutoff is None else fourier_cutoff
    if cutoff < 0:
        raise ValueError(f"Fourier cutoff must be non-negative, got {cutoff}")
    symbol = symbol.truncated(cutoff)
    c = symbol.cutoff
    ms = np.arange(-c, c + 1, dtype=np.int64)
    j = np.arange(N, dtype=np.int64)
    op = np.zeros((N, N), dtype=np.complex128)
    for column, n in enumerate(ms):
        weights = symbol.coeffs[:, column]
        if not np.any(weights):
            continue
        bins = np.zeros(N, dtype=np.complex128)
        np.add.at(bins, ms % N, weights * weyl_phase(ms, n, N))
        # sum_m b_m e^{2i pi m j / N} for every row j
        op[j, (j - n) % N] += np.fft.ifft(bins) * N
    return DenseOperator(op)


def quantize_symbol(N, f, fourier_cutoff=None):
    """Op_h(f): exact diagonal for q-only symbols, truncated Weyl sum otherwise"""
    if fourier_cutoff is not None and fourier_cutoff < 0:
        raise ValueError(f"Fourier cutoff must be non-negative, got {fourier_cutoff}")
    if isinstance(f, FourierSymbol):
        return quantize_fourier(N, f, fourier_cutoff)
    if isinstance(f, DampingSymbol):
        if f.is_q_only:
            return DenseOperator.diagonal(f(np.arange(N) / N))
        return quantize_fourier(N, FourierSymbol.from_modes(f.fourier_coefficients()), fourier_cutoff)
    if callable(f):
        return DenseOperator.diagonal(np.asarray(f(np.arange(N) / N), dtype=np.complex128)
                                      * np.ones(N))
    raise TypeError(f"cannot quantize {type(f).__name__}")


def normalized_trace(A):
    """h Tr A"""
    return A.trace() / A.N

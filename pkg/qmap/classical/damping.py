from dataclasses import dataclass, field

import numpy as np

from ..errors import SymbolError

KINDS = ('constant', 'a1', 'a2', 'table', 'fourier')

# Dense grids used to certify a_minus <= a <= a_plus
CHECK_POINTS_1D = 2 ** 16
CHECK_POINTS_2D = 1024

A1_PLATEAU = 1.0 / 16.0


def smoothstep_a1(q):
    """0 on [1/3, 2/3], 1 on [0, 1/6] u [5/6, 1], cosine ramps in between"""
    q = np.mod(np.asarray(q, dtype=float), 1.0)
    s = np.where((q <= 1.0 / 6.0) | (q >= 5.0 / 6.0), 1.0, 0.0)
    down = (q > 1.0 / 6.0) & (q < 1.0 / 3.0)
    s = np.where(down, 0.5 * (1.0 + np.cos(6 * np.pi * (q - 1.0 / 6.0))), s)
    up = (q > 2.0 / 3.0) & (q < 5.0 / 6.0)
    return np.where(up, 0.5 * (1.0 - np.cos(6 * np.pi * (q - 2.0 / 3.0))), s)


@dataclass(frozen=True, eq=False)
class DampingSymbol:
    """Real damping a(q) or a(q, p) with 0 < a_minus <= a <= a_plus <= 1

    `params` depends on `kind`:
        constant  (c,)
        a1        (v,)  second plateau value, 1/16 by default
        a2        ()
        table     samples of a(q) on the uniform grid k/K
        fourier   (mean, ((m, n, amp, phase), ...)) for
                  mean + sum amp cos(2 pi (m q - n p) + phase)
    """
    kind: str
    params: tuple = ()
    a_minus: float = field(init=False)
    a_plus: float = field(init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SymbolError(f"unknown damping kind '{self.kind}'")
        if self.kind == 'table':
            object.__setattr__(self, '_table_coeffs', _table_coefficients(self.params))
        lo, hi = self._range_on_grid()
        if not lo > 0:
            raise SymbolError(f"non-invertible damping: min a = {lo:.6g} <= 0")
        if hi > 1.0 + 1e-12:
            raise SymbolError(f"damping exceeds 1: max a = {hi:.6g}")
        object.__setattr__(self, 'a_minus', float(lo))
        object.__setattr__(self, 'a_plus', float(min(hi, 1.0)))

    @classmethod
    def constant(cls, c):
        return cls('constant', (float(c),))

    @classmethod
    def a1(cls, v=A1_PLATEAU):
        return cls('a1', (float(v),))

    @classmethod
    def a2(cls):
        return cls('a2')

    @classmethod
    def table(cls, values):
        return cls('table', tuple(float(v) for v in values))

    @classmethod
    def fourier(cls, mean, terms):
        terms = tuple((int(m), int(n), float(amp), float(phase)) for m, n, amp, phase in terms)
        return cls('fourier', (float(mean), terms))

    @property
    def is_constant(self):
        return self.kind == 'constant'

    @property
    def is_q_only(self):
        if self.kind == 'fourier':
            return all(n == 0 for _, n, _, _ in self.params[1])
        return True

    def __call__(self, q, p=None):
        """Evaluate on arrays; q-only kinds ignore p"""
        q = np.asarray(q, dtype=float)
        if self.kind == 'constant':
            return np.full(np.broadcast(q, q if p is None else p).shape, self.params[0])
        if self.kind == 'a1':
            return self.params[0] ** smoothstep_a1(q)
        if self.kind == 'a2':
            return 1.0 - 0.5 * np.sin(2 * np.pi * q) ** 2
        if self.kind == 'table':
            freqs, coeffs = self._table_coeffs
            phases = np.exp(2j * np.pi * np.multiply.outer(q, freqs))
            return np.real(phases @ coeffs)
        mean, terms = self.params
        p = np.zeros_like(q) if p is None else np.asarray(p, dtype=float)
        value = np.full(np.broadcast(q, p).shape, mean)
        for m, n, amp, phase in terms:
            value = value + amp * np.cos(2 * np.pi * (m * q - n * p) + phase)
        return value

    def log(self, q, p=None):
        if self.kind == 'constant':
            return np.full(np.shape(q), np.log(self.params[0]))
        return np.log(self(q, p))

    def fourier_coefficients(self):
        """Exact coefficients {(m, n): f_mn} of a = sum f_mn e^{2i pi (m q - n p)}, fourier kind only"""
        if self.kind == 'constant':
            return {(0, 0): complex(self.params[0])}
        if self.kind == 'a2':
            return {(0, 0): 0.75 + 0j, (2, 0): 0.125 + 0j, (-2, 0): 0.125 + 0j}
        if self.kind != 'fourier':
            raise SymbolError(f"damping kind '{self.kind}' has no finite Fourier series")
        mean, terms = self.params
        coeffs = {(0, 0): complex(mean)}
        for m, n, amp, phase in terms:
            half = 0.5 * amp * np.exp(1j * phase)
            coeffs[(m, n)] = coeffs.get((m, n), 0) + half
            coeffs[(-m, -n)] = coeffs.get((-m, -n), 0) + np.conj(half)
        return coeffs

    def describe(self):
        """Stable textual form used in cache keys and reports"""
        if self.kind == 'fourier':
            mean, terms = self.params
            body = ';'.join(f"{m},{n},{amp!r},{phase!r}" for m, n, amp, phase in terms)
            return f"fourier:{mean!r}:{body}"
        return f"{self.kind}:" + ','.join(repr(v) for v in self.params)

    def _range_on_grid(self):
        if self.kind == 'constant':
            return self.params[0], self.params[0]
        if self.kind == 'a1':
            v = self.params[0]
            return min(v, 1.0), max(v, 1.0)
        if self.kind == 'a2':
            return 0.5, 1.0
        if self.is_q_only:
            values = self(np.arange(CHECK_POINTS_1D) / CHECK_POINTS_1D)
        else:
            grid = np.arange(CHECK_POINTS_2D) / CHECK_POINTS_2D
            qq, pp = np.meshgrid(grid, grid, indexing='ij')
            values = self(qq, pp)
        return float(values.min()), float(values.max())


def _table_coefficients(values):
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 1:
        raise SymbolError('damping table must be a non-empty list of samples')
    K = values.size
    freqs = np.fft.fftfreq(K, d=1.0 / K)
    return freqs, np.fft.fft(values) / K


def damping_from_config(cfg):
    """Build a DampingSymbol from its config dict (kind + parameters)"""
    kind = cfg.get('kind')
    if kind in ('constant', 'const'):
        return DampingSymbol.constant(cfg.get('value', 1.0))
    if kind == 'a1':
        return DampingSymbol.a1(cfg.get('plateau', A1_PLATEAU))
    if kind == 'a2':
        return DampingSymbol.a2()
    if kind == 'table':
        return DampingSymbol.table(cfg.get('values', []))
    if kind == 'fourier':
        return DampingSymbol.fourier(cfg.get('mean', 1.0), cfg.get('terms', []))
    raise SymbolError(f"unknown damping kind '{kind}'")

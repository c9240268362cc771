import numpy as np

from .result import propagator_of


def strip_fraction(s, lo, hi, tolerance=0.0):
    """h #{j : lo <= r_j <= hi}; tolerance widens both ends"""
    if lo > hi:
        raise ValueError(f"empty strip: lo={lo} > hi={hi}")
    inside = (s.moduli >= lo - tolerance) & (s.moduli <= hi + tolerance)
    return np.count_nonzero(inside) / s.N


def quartile_indices(N):
    """1-based E(N/4) and E(3N/4), clamped to [1, N]"""
    return min(max(N // 4, 1), N), min(max(3 * N // 4, 1), N)


def width(s):
    """W_h = r_E(N/4) - r_E(3N/4)"""
    if s.N < 4:
        raise ValueError(f"width needs N >= 4, got {s.N}")
    upper, lower = quartile_indices(s.N)
    return float(s.moduli[upper - 1] - s.moduli[lower - 1])


def angular_moments(s, kmax):
    """h sum_j exp(2 i pi k theta_j) for k = 0 .. kmax"""
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    moments = [1.0 + 0.0j]
    for k in range(1, kmax + 1):
        moments.append(complex(np.mean(np.exp(2j * np.pi * k * s.angles))))
    return moments


def trace_sequence(spec, n_max):
    """h Tr M^n for n = 1 .. n_max"""
    M = propagator_of(spec).entries
    N = M.shape[0]
    power = np.eye(N, dtype=np.complex128)
    traces = []
    for _ in range(n_max):
        power = M @ power
        traces.append(complex(np.trace(power)) / N)
    return traces


def large_count(s, mean, c):
    """h #{j : r_j >= mean + c}"""
    if c <= 0:
        raise ValueError(f"threshold offset must be positive, got {c}")
    return np.count_nonzero(s.moduli >= mean + c) / s.N


def log_window(N, epsilon):
    """(log N)^-(1/2 - epsilon)"""
    if not 0 <= epsilon < 0.5:
        raise ValueError(f"epsilon must lie in [0, 1/2), got {epsilon}")
    return float(np.log(N) ** -(0.5 - epsilon))


def window_fraction(s, mean, epsilon):
    """h #{j : |r_j - mean| <= (log N)^-(1/2 - epsilon)}"""
    return np.count_nonzero(np.abs(s.moduli - mean) <= log_window(s.N, epsilon)) / s.N


def integrated_density(values):
    """Step data (x, F(x)) of the empirical distribution of values"""
    x = np.sort(np.asarray(values, dtype=float))
    if x.size == 0:
        raise ValueError('no values to integrate')
    return x, np.arange(1, x.size + 1) / x.size

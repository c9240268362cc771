from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .torus import orbit

QUADRATURE_POINTS_1D = 2 ** 16
QUADRATURE_POINTS_2D = 1024

# Fixed chunk size so the sample stream does not depend on the worker count
SAMPLE_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class BirkhoffStats:
    n: int
    samples: int
    seed: int
    values: np.ndarray
    second_moment: float

    def fraction_above(self, threshold):
        if self.samples == 0:
            return 0.0
        return float(np.count_nonzero(self.values >= threshold)) / self.samples


def log_orbit_mean(a, cmap, q, p, n):
    """l a_n on coordinate arrays: mean of log a over kappa^1 x ... kappa^n x"""
    if n < 1:
        raise ValueError(f"word length must be positive, got {n}")
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if a.is_constant:
        return np.full(np.broadcast(q, p).shape, np.log(a.params[0]))
    total = np.zeros(np.broadcast(q, p).shape)
    q_only = a.is_q_only
    for qi, pi in orbit(cmap, q, p, n):
        total += a.log(qi) if q_only else a.log(qi, pi)
    return total / n


def birkhoff_log_mean(a, cmap, x, n):
    return float(log_orbit_mean(a, cmap, x.q, x.p, n))


def birkhoff_average(a, cmap, q, p, n):
    """a_n(x) = prod |a o kappa^i(x)|^(1/n) on coordinate arrays"""
    return np.exp(log_orbit_mean(a, cmap, q, p, n))


def log_geometric_mean(a, grid_points=None):
    """Trapezoid quadrature of log a over the torus"""
    if a.is_constant:
        return float(np.log(a.params[0]))
    if a.is_q_only:
        grid_points = grid_points or QUADRATURE_POINTS_1D
        if grid_points < 64:
            raise ValueError(f"quadrature needs at least 64 points, got {grid_points}")
        return float(np.mean(a.log(np.arange(grid_points) / grid_points)))
    grid_points = grid_points or QUADRATURE_POINTS_2D
    if grid_points < 64:
        raise ValueError(f"quadrature needs at least 64 points, got {grid_points}")
    grid = np.arange(grid_points) / grid_points
    # Row by row keeps the 2-D quadrature within memory for large grids
    rows = [np.mean(a.log(np.full(grid_points, qv), grid)) for qv in grid]
    return float(np.mean(rows))


def geometric_mean(a, grid_points=None):
    if a.is_constant:
        return a.params[0]
    return float(np.exp(log_geometric_mean(a, grid_points)))


def sample_points(samples, seed):
    """Uniform torus points from Philox streams, one spawned stream per fixed-size chunk"""
    chunks = -(-samples // SAMPLE_CHUNK)
    children = np.random.SeedSequence(seed).spawn(chunks)
    parts = []
    for index, child in enumerate(children):
        size = min(SAMPLE_CHUNK, samples - index * SAMPLE_CHUNK)
        parts.append(np.random.Generator(np.random.Philox(child)).random((size, 2)))
    if not parts:
        return np.empty((0, 2))
    return np.concatenate(parts)


def deviation_distribution(a, cmap, n, samples, seed, log_mean=None, workers=1):
    """Empirical law of x_n = l a_n - l a over seeded uniform sample points"""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if a.is_constant:
        values = np.zeros(samples)
        return BirkhoffStats(n, samples, seed, values, 0.0)
    if log_mean is None:
        log_mean = log_geometric_mean(a)
    points = sample_points(samples, seed)
    bounds = range(0, samples, SAMPLE_CHUNK)

    def chunk(start):
        block = points[start:start + SAMPLE_CHUNK]
        return log_orbit_mean(a, cmap, block[:, 0], block[:, 1], n) - log_mean

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(chunk, bounds)))
    else:
        values = np.concatenate([chunk(start) for start in bounds])
    return BirkhoffStats(n, samples, seed, values, float(n * np.mean(values ** 2)))


def birkhoff_extremes(a, cmap, n, grid_points=256):
    """Min and max of a_n over a centred grid: finite-n estimates of the annulus radii"""
    grid = (np.arange(grid_points) + 0.5) / grid_points
    qq, pp = np.meshgrid(grid, grid, indexing='ij')
    values = birkhoff_average(a, cmap, qq.ravel(), pp.ravel(), n)
    return float(values.min()), float(values.max())

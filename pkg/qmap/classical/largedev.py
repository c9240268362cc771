import math
from dataclasses import dataclass

import numpy as np

from .birkhoff import geometric_mean
from .torus import map_jacobian

EXPANSION_GRID = 4096


@dataclass(frozen=True)
class LargeDevParams:
    gamma: float
    T: float
    lc: float
    rate: float
    tau_c: float
    nu: float
    c: float
    mean: float
    rate_table: tuple


def rate_estimate(stats, lc):
    """I(lc) = -(1/n) log P(x_n >= lc) at the longest word; +inf when nothing exceeds lc"""
    stats = [s for s in stats if s is not None]
    if not stats or max(stats, key=lambda s: s.n).samples == 0:
        raise ValueError('no samples')
    longest = max(stats, key=lambda s: s.n)
    fraction = longest.fraction_above(lc)
    if fraction == 0.0:
        return math.inf
    return -math.log(fraction) / longest.n


def rate_table(stats, lc_grid):
    """(lc, I(lc)) pairs over a grid of thresholds"""
    return tuple((float(lc), rate_estimate(stats, lc)) for lc in sorted(lc_grid))


def is_monotone(table, tolerance=0.0):
    """Rate nondecreasing in lc up to the given noise tolerance"""
    rates = [r for _, r in table]
    return all(b >= a - tolerance for a, b in zip(rates, rates[1:]))


def expansion_rate(cmap, grid_points=EXPANSION_GRID):
    """Gamma = log sup ||D kappa||, maximised over a grid of the cat image coordinate"""
    if grid_points < 64:
        raise ValueError(f"expansion grid needs at least 64 points, got {grid_points}")
    J = map_jacobian(cmap, np.arange(grid_points) / grid_points)
    # 2x2 spectral norm from the Frobenius norm and the determinant
    frob2 = np.sum(J ** 2, axis=(-2, -1))
    det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
    disc = np.sqrt(np.maximum(frob2 ** 2 - 4 * det ** 2, 0.0))
    sigma = np.sqrt(0.5 * (frob2 + disc))
    return float(np.log(sigma.max()))


def interpolate_rate(table, lc):
    """Piecewise-linear I(lc), clamped to the table ends; infinite neighbours give +inf"""
    if not table:
        raise ValueError('empty rate table')
    xs = [x for x, _ in table]
    ys = [y for _, y in table]
    if lc <= xs[0]:
        return ys[0]
    if lc >= xs[-1]:
        return ys[-1]
    i = int(np.searchsorted(xs, lc))
    x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
    if math.isinf(y0) or math.isinf(y1):
        return y0 if lc == x0 else math.inf
    return y0 + (y1 - y0) * (lc - x0) / (x1 - x0)


def exponent_from_rate(rate, T):
    """(tau_c, nu) = (T / (1 + I T), I T / (1 + I T))"""
    if math.isinf(rate):
        return 0.0, 1.0
    return T / (1.0 + rate * T), rate * T / (1.0 + rate * T)


def ehrenfest_constant(gamma, a_minus):
    """T_{a,kappa} = 1 / (2 Gamma - 12 log a_-)"""
    denominator = 2.0 * gamma - 12.0 * math.log(a_minus)
    if a_minus >= 1.0 or denominator <= 0:
        raise ValueError('damping too weak for T_{a,κ}')
    return 1.0 / denominator


def large_dev_params(a, cmap, table, c, grid_points=EXPANSION_GRID):
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    gamma = expansion_rate(cmap, grid_points)
    T = ehrenfest_constant(gamma, a.a_minus)
    mean = geometric_mean(a)
    lc = math.log(1.0 + c / mean)
    rate = interpolate_rate(table, lc)
    tau_c, nu = exponent_from_rate(rate, T)
    return LargeDevParams(gamma, T, lc, rate, tau_c, nu, c, mean, tuple(table))

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WidthFit:
    """W ~ A (log N)^-B, fitted in log-log coordinates"""
    points: tuple
    A: float
    B: float
    residual: float
    stderr_log_A: float = math.nan
    stderr_B: float = math.nan

    def predict(self, N):
        return self.A * np.log(np.asarray(N, dtype=float)) ** -self.B


def loglog_fit(points):
    """Least squares on log W = log A - B log log N"""
    points = tuple((int(N), float(W)) for N, W in points)
    if len(points) < 3:
        raise ValueError(f"fit needs at least 3 points, got {len(points)}")
    if any(W <= 0 for _, W in points):
        raise ValueError('fit needs positive widths')
    if any(N < 2 for N, _ in points):
        raise ValueError('fit needs N >= 2')
    N = np.array([p[0] for p in points], dtype=float)
    x = np.log(np.log(N))
    y = np.log([p[1] for p in points])
    X = np.column_stack([np.ones_like(x), -x])
    coef, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < 2:
        raise ValueError('fit needs at least two distinct N')
    residuals = y - X @ coef
    ssr = float(residuals @ residuals)
    dof = len(points) - 2
    covariance = ssr / dof * np.linalg.inv(X.T @ X)
    return WidthFit(
        points=points,
        A=float(np.exp(coef[0])),
        B=float(coef[1]),
        residual=math.sqrt(ssr / len(points)),
        stderr_log_A=float(math.sqrt(covariance[0, 0])),
        stderr_B=float(math.sqrt(covariance[1, 1]))
    )

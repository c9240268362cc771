from dataclasses import dataclass

import numpy as np

# Perturbation strength below which the kicked m=1 cat map stays Anosov
ANOSOV_ALPHA = 0.33


def wrap_unit(x):
    """Reduce coordinates mod 1 into [0, 1), also for tiny negative inputs"""
    r = np.mod(x, 1.0)
    if np.ndim(r) == 0:
        return 0.0 if r >= 1.0 else float(r)
    return np.where(r >= 1.0, 0.0, r)


@dataclass(frozen=True)
class TorusPoint:
    q: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, 'q', wrap_unit(float(self.q)))
        object.__setattr__(self, 'p', wrap_unit(float(self.p)))

    def distance(self, other):
        """Distance on the torus (shortest representative of the difference)"""
        dq = abs(self.q - other.q)
        dp = abs(self.p - other.p)
        return float(np.hypot(min(dq, 1.0 - dq), min(dp, 1.0 - dp)))


def cat_matrix(m):
    """Linear part A = [[2m, 1], [4m^2 - 1, 2m]] of the cat map"""
    return np.array([[2 * m, 1], [4 * m * m - 1, 2 * m]], dtype=np.int64)


@dataclass(frozen=True)
class ClassicalMap:
    """Kick-after-cat map on T^2; `identity=True` replaces the cat factor by the identity"""
    m: int = 1
    alpha: float = 0.0
    identity: bool = False

    def __post_init__(self):
        if not self.identity and int(self.m) < 1:
            raise ValueError(f"cat parameter m must be a positive integer, got {self.m}")
        if self.alpha < 0:
            raise ValueError(f"kick strength must be non-negative, got {self.alpha}")

    @classmethod
    def identity_map(cls, alpha=0.0):
        return cls(m=0, alpha=alpha, identity=True)

    @property
    def linear_part(self):
        if self.identity:
            return np.eye(2, dtype=np.int64)
        return cat_matrix(self.m)

    @property
    def is_hyperbolic(self):
        A = self.linear_part
        return bool(abs(int(A[0, 0] + A[1, 1])) > 2)

    def step(self, q, p):
        """One application of kick o cat on (arrays of) coordinates"""
        if not self.identity:
            q, p = _cat_arrays(self.m, q, p)
        return _kick_arrays(self.alpha, q, p)

    def step_inverse(self, q, p):
        """One application of cat^-1 o kick^-1"""
        q, p = _kick_arrays(-self.alpha, q, p)
        if not self.identity:
            q, p = _cat_inverse_arrays(self.m, q, p)
        return q, p

    def __call__(self, x):
        return iterate(self, x, 1)


def anosov_bound_ok(cmap):
    """True when the kick is weak enough for the perturbed cat map to stay Anosov"""
    return cmap.is_hyperbolic and cmap.alpha < ANOSOV_ALPHA


def _cat_arrays(m, q, p):
    return (wrap_unit(2 * m * q + p),
            wrap_unit((4 * m * m - 1) * q + 2 * m * p))


def _cat_inverse_arrays(m, q, p):
    # A^-1 = [[2m, -1], [1 - 4m^2, 2m]]
    return (wrap_unit(2 * m * q - p),
            wrap_unit((1 - 4 * m * m) * q + 2 * m * p))


def _kick_arrays(alpha, q, p):
    # Time-one flow of H = alpha/(4 pi^2) sin(2 pi q): q is conserved, so p moves linearly
    if alpha == 0:
        return q, p
    return q, wrap_unit(p - alpha / (2 * np.pi) * np.cos(2 * np.pi * q))


def cat_apply(m, x):
    q, p = _cat_arrays(m, x.q, x.p)
    return TorusPoint(q, p)


def kick_apply(alpha, x):
    q, p = _kick_arrays(alpha, x.q, x.p)
    return TorusPoint(q, p)


def iterate(cmap, x, n):
    """n-fold composition of the map; negative n runs the inverse map |n| times"""
    q, p = x.q, x.p
    step = cmap.step if n >= 0 else cmap.step_inverse
    for _ in range(abs(int(n))):
        q, p = step(q, p)
    return TorusPoint(q, p)


def orbit(cmap, q, p, n):
    """Yield the points kappa^1 x ... kappa^n x for coordinate arrays"""
    for _ in range(n):
        q, p = cmap.step(q, p)
        yield q, p


def map_jacobian(cmap, q_image):
    """D kappa as a (..., 2, 2) array; depends only on the cat image coordinate q'"""
    A = cmap.linear_part.astype(float)
    q_image = np.asarray(q_image, dtype=float)
    shear = cmap.alpha * np.sin(2 * np.pi * q_image)
    J = np.empty(q_image.shape + (2, 2))
    J[..., 0, 0] = A[0, 0]
    J[..., 0, 1] = A[0, 1]
    J[..., 1, 0] = shear * A[0, 0] + A[1, 0]
    J[..., 1, 1] = shear * A[0, 1] + A[1, 1]
    return J

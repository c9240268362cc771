"""Exception hierarchy shared by every qmap module."""


class QmapError(Exception):
    """Base class for all qmap errors"""


class ConfigError(QmapError, ValueError):
    """Invalid experiment configuration, located by its key path"""

    def __init__(self, message, key_path=None):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class SymbolError(QmapError, ValueError):
    """Damping symbol outside the admissible range 0 < a <= 1"""


class NumericalError(QmapError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result"""


class EigenConvergenceError(NumericalError):
    """Shifted QR ran out of sweeps; carries the eigenvalues deflated so far"""

    def __init__(self, message, partial=None, iterations=0):
        super().__init__(message)
        self.partial = [] if partial is None else list(partial)
        self.iterations = iterations


class CacheError(QmapError):
    """Unreadable or mismatched cache file"""

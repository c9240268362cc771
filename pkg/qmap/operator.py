import struct
from dataclasses import dataclass

import numpy as np

from .errors import CacheError

MAGIC = b'QMAP'
FORMAT_VERSION = 1
HEADER = struct.Struct('<4sIIHHI')

ROLE_TAGS = {'operator': 0, 'propagator': 1, 'inverse': 2, 'spectrum': 3, 'sn': 4}
ROLE_NAMES = {tag: name for name, tag in ROLE_TAGS.items()}

# dtype code 1 is the compact export layout, code 2 keeps full precision
DTYPE_CODES = {1: np.dtype('<c8'), 2: np.dtype('<c16')}


def as_matrix(A):
    """Entries of a DenseOperator, or the array itself"""
    return A.entries if isinstance(A, DenseOperator) else np.asarray(A)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """N x N complex matrix on H_N in the position basis e_0 ... e_{N-1}"""
    entries: np.ndarray
    role: str = 'operator'

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128, order='C')
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(f"operator must be a non-empty square matrix, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError('operator entries must be finite')
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def N(self):
        return self.entries.shape[0]

    @classmethod
    def diagonal(cls, values, role='operator'):
        return cls(np.diag(np.asarray(values, dtype=np.complex128)), role)

    def trace(self):
        return complex(np.trace(self.entries))

    def power(self, n):
        """M^n by repeated multiplication"""
        result = np.eye(self.N, dtype=np.complex128)
        for _ in range(n):
            result = self.entries @ result
        return DenseOperator(result, self.role)

    def to_bytes(self, dtype_code=2):
        return encode_array(self.entries, self.role, dtype_code)

    @classmethod
    def from_bytes(cls, blob):
        array, role = decode_array(blob)
        if array.ndim != 2:
            raise CacheError('binary payload is not a matrix')
        return cls(array, role)


def encode_array(array, role='operator', dtype_code=2):
    """Flat little-endian layout: header (magic, version, N, role, dtype, columns) + data"""
    array = np.asarray(array)
    if dtype_code not in DTYPE_CODES:
        raise ValueError(f"unknown dtype code {dtype_code}")
    if array.ndim == 1:
        N, columns = array.shape[0], 1
    else:
        N, columns = array.shape
    header = HEADER.pack(MAGIC, FORMAT_VERSION, N, ROLE_TAGS[role], dtype_code, columns)
    return header + np.ascontiguousarray(array, dtype=DTYPE_CODES[dtype_code]).tobytes()


def decode_array(blob):
    if len(blob) < HEADER.size:
        raise CacheError('truncated header')
    magic, version, N, tag, dtype_code, columns = HEADER.unpack_from(blob)
    if magic != MAGIC or version != FORMAT_VERSION:
        raise CacheError('bad magic or version')
    if tag not in ROLE_NAMES or dtype_code not in DTYPE_CODES:
        raise CacheError(f"unknown role tag {tag} or dtype code {dtype_code}")
    dtype = DTYPE_CODES[dtype_code]
    expected = HEADER.size + N * columns * dtype.itemsize
    if len(blob) != expected:
        raise CacheError(f"payload size {len(blob)} does not match header ({expected})")
    data = np.frombuffer(blob, dtype=dtype, offset=HEADER.size).astype(np.complex128)
    if columns == 1 and ROLE_NAMES[tag] in ('spectrum', 'sn'):
        return data, ROLE_NAMES[tag]
    return data.reshape(N, columns), ROLE_NAMES[tag]

import hashlib
import json
import os
import threading

import numpy as np

from ..errors import CacheError
from ..operator import DenseOperator, decode_array, encode_array
from ..spectral import SpectrumResult
from ..utils import log_message

# Bumped whenever a change alters computed operators or spectra
CODE_VERSION = 'qmap-cache-1'


def cache_key(spec, alpha_text=None, version=CODE_VERSION):
    """Stable hash over (m, alpha text, damping, N, code version)"""
    text = f"{version}|{spec.describe(alpha_text)}"
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 20), b''):
            digest.update(block)
    return digest.hexdigest()


def atomic_write(path, payload):
    """Write to a private staging file next to path, then rename over it"""
    staging = f"{path}.tmp-{os.getpid()}-{threading.get_ident()}"
    mode = 'wb' if isinstance(payload, bytes) else 'w'
    with open(staging, mode, **({} if mode == 'wb' else {'encoding': 'utf-8', 'newline': ''})) as f:
        f.write(payload)
    os.replace(staging, path)


class OperatorCache:
    """Damped propagators and their spectra on disk, keyed by cache_key"""

    def __init__(self, directory, log=log_message):
        self.directory = directory
        self.log = log
        os.makedirs(directory, exist_ok=True)

    def paths(self, key):
        base = os.path.join(self.directory, key)
        return {'operator': base + '.op', 'spectrum': base + '.spec', 'meta': base + '.json'}

    def _read_meta(self, key):
        paths = self.paths(key)
        if not os.path.exists(paths['meta']):
            return None
        try:
            with open(paths['meta'], 'r', encoding='utf-8') as f:
                meta = json.load(f)
        except (OSError, ValueError) as e:
            raise CacheError(f"unreadable cache metadata: {e}") from e
        if meta.get('key') != key:
            raise CacheError('cache metadata belongs to another key')
        return meta

    def _read_checked(self, key, name, meta):
        path = self.paths(key)[name]
        try:
            with open(path, 'rb') as f:
                blob = f.read()
        except OSError as e:
            raise CacheError(f"missing cached {name}: {e}") from e
        if hashlib.sha256(blob).hexdigest() != meta['files'].get(name):
            raise CacheError(f"cached {name} does not match its recorded hash")
        return blob

    def load_spectrum(self, key):
        """Cached SpectrumResult, or None when absent or corrupt"""
        try:
            meta = self._read_meta(key)
            if meta is None:
                return None
            values, role = decode_array(self._read_checked(key, 'spectrum', meta))
            if role != 'spectrum' or values.shape != (meta['N'],):
                raise CacheError('cached spectrum has the wrong layout')
            return SpectrumResult.from_eigenvalues(values, meta['provenance'], meta['residual'],
                                                   meta['flagged'])
        except (CacheError, KeyError, ValueError) as e:
            self.log(f"Cache entry {key[:12]} is corrupt ({e}); recomputing", 'WARNING')
            self.discard(key)
            return None

    def load_operator(self, key):
        try:
            meta = self._read_meta(key)
            if meta is None:
                return None
            return DenseOperator.from_bytes(self._read_checked(key, 'operator', meta))
        except (CacheError, KeyError, ValueError) as e:
            self.log(f"Cache entry {key[:12]} is corrupt ({e}); recomputing", 'WARNING')
            self.discard(key)
            return None

    def store(self, key, operator, result):
        paths = self.paths(key)
        blobs = {
            'operator': operator.to_bytes(dtype_code=2),
            'spectrum': encode_array(np.asarray(result.eigenvalues), 'spectrum', dtype_code=2)
        }
        for name, blob in blobs.items():
            atomic_write(paths[name], blob)
        meta = {
            'key': key,
            'N': result.N,
            'provenance': result.provenance,
            'residual': result.residual,
            'flagged': result.flagged,
            'files': {name: hashlib.sha256(blob).hexdigest() for name, blob in blobs.items()}
        }
        # Metadata last: an entry without it is never read
        atomic_write(paths['meta'], json.dumps(meta, sort_keys=True, indent=2))

    def discard(self, key):
        for path in self.paths(key).values():
            try:
                os.remove(path)
            except FileNotFoundError:
                pass

import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal

import psutil

from ..classical import ClassicalMap, damping_from_config
from ..errors import ConfigError, SymbolError
from ..quantization import PropagatorSpec

EXPERIMENTS = ('spectrum', 'weyl-law', 'width-scan', 'angular', 'large-dev', 'classical-stats')

# Experiments whose reading relies on the map being Anosov
ANOSOV_EXPERIMENTS = ('weyl-law', 'width-scan', 'large-dev')

DEFAULTS = {
    'map': {'m': 1, 'alpha': '0.05', 'identity': False},
    'N_list': [200, 500, 1000, 2100],
    'n_list': [1, 2, 3],
    'c_list': [0.05],
    'lc_list': [0.05, 0.1, 0.15, 0.2, 0.25, 0.3],
    'word_lengths': [10, 20, 40, 80],
    'samples': 100000,
    'seed': 20240601,
    'output_dir': 'qmap-out',
    'cache_dir': None,
    'threads': None,
    'theme': 'light',
    'delta': 0.1,
    'kmax': 5,
    'epsilon': 0.1,
    'N_cap': 4096,
    'tolerances': {
        'residual': 1e-10,
        'annulus': 1e-8,
        'weyl': 1e-8,
        'cache': 1e-12,
        'rate_monotone': 0.05
    }
}

DAMPING_KEYS = {
    'constant': {'kind', 'value'},
    'a1': {'kind', 'plateau'},
    'a2': {'kind'},
    'table': {'kind', 'values'},
    'fourier': {'kind', 'mean', 'terms'}
}

TOP_LEVEL_KEYS = {'experiment', 'map', 'damping'} | set(DEFAULTS)

# Keys that only say where and how fast to run; left out of the config hash
RUNTIME_KEYS = ('output_dir', 'cache_dir', 'threads')


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-10
    annulus: float = 1e-8
    weyl: float = 1e-8
    cache: float = 1e-12
    rate_monotone: float = 0.05


@dataclass(frozen=True)
class MapConfig:
    m: int = 1
    alpha_text: str = '0.05'
    identity: bool = False

    @property
    def alpha(self):
        return float(self.alpha_text)

    def build(self):
        if self.identity:
            return ClassicalMap.identity_map(self.alpha)
        return ClassicalMap(self.m, self.alpha)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    map: MapConfig
    damping: dict
    N_list: tuple
    n_list: tuple
    c_list: tuple
    lc_list: tuple
    word_lengths: tuple
    samples: int
    seed: int
    output_dir: str
    cache_dir: str
    threads: int
    theme: str
    delta: float
    kmax: int
    epsilon: float
    N_cap: int
    tolerances: Tolerances = field(default_factory=Tolerances)

    def classical_map(self):
        return self.map.build()

    def damping_symbol(self):
        return damping_from_config(self.damping)

    def propagator_spec(self, N):
        return PropagatorSpec(self.classical_map(), self.damping_symbol(), N)

    def echo(self):
        """Filled-in configuration as plain JSON data"""
        return {
            'experiment': self.experiment,
            'map': {'m': self.map.m, 'alpha': self.map.alpha_text, 'identity': self.map.identity},
            'damping': self.damping,
            'N_list': list(self.N_list),
            'n_list': list(self.n_list),
            'c_list': list(self.c_list),
            'lc_list': list(self.lc_list),
            'word_lengths': list(self.word_lengths),
            'samples': self.samples,
            'seed': self.seed,
            'output_dir': self.output_dir,
            'cache_dir': self.cache_dir,
            'threads': self.threads,
            'theme': self.theme,
            'delta': self.delta,
            'kmax': self.kmax,
            'epsilon': self.epsilon,
            'N_cap': self.N_cap,
            'tolerances': dict(self.tolerances.__dict__)
        }

    def digest(self):
        """SHA-256 of the scientific part of the echo"""
        echo = {k: v for k, v in self.echo().items() if k not in RUNTIME_KEYS}
        text = json.dumps(echo, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def with_overrides(self, **overrides):
        """Copy with CLI-level overrides applied (None values are ignored)"""
        values = dict(self.__dict__)
        values.update({k: v for k, v in overrides.items() if v is not None})
        if int(values['threads']) < 1:
            raise ConfigError('must be >= 1', 'threads')
        return ExperimentConfig(**values)


def _reject_duplicates(pairs):
    keys = [k for k, _ in pairs]
    for key in keys:
        if keys.count(key) > 1:
            raise ConfigError(f"duplicate key '{key}'")
    return dict(pairs)


def _reject_constant(name):
    raise ConfigError(f"non-finite number '{name}' is not allowed")


def load_json(text):
    """Strict JSON: duplicate keys, NaN/Infinity and trailing data are errors"""
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicates,
                          parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ConfigError(f"line {e.lineno} column {e.colno}: {e.msg}") from e


def _check_keys(section, allowed, path):
    if not isinstance(section, dict):
        raise ConfigError('expected an object', path)
    for key in section:
        if key not in allowed:
            raise ConfigError('unknown key', f"{path}.{key}" if path else key)


def _as_int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", path)
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be >= {minimum}, got {value}", path)
    return value


def _as_float(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float, Decimal)):
        raise ConfigError(f"expected a number, got {value!r}", path)
    return float(value)


def _as_list(value, path, convert):
    if not isinstance(value, list) or not value:
        raise ConfigError('expected a non-empty list', path)
    return tuple(convert(item, f"{path}[{i}]") for i, item in enumerate(value))


def _plain(value):
    """Decimals back to floats, recursively, for the damping block"""
    if isinstance(value, Decimal):
        return float(value)
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _parse_map(section):
    merged = dict(DEFAULTS['map'])
    if section is not None:
        _check_keys(section, set(DEFAULTS['map']), 'map')
        merged.update(section)
    m = _as_int(merged['m'], 'map.m', 0 if merged.get('identity') else 1)
    alpha = merged['alpha']
    if isinstance(alpha, str):
        try:
            alpha = Decimal(alpha)
        except ArithmeticError as e:
            raise ConfigError(f"not a decimal number: {merged['alpha']!r}", 'map.alpha') from e
    _as_float(alpha, 'map.alpha')
    if alpha < 0:
        raise ConfigError('kick strength must be non-negative', 'map.alpha')
    identity = merged['identity']
    if not isinstance(identity, bool):
        raise ConfigError('expected true or false', 'map.identity')
    return MapConfig(m, str(alpha), identity)


def _parse_damping(section):
    if section is None:
        raise ConfigError('missing required key', 'damping')
    if not isinstance(section, dict):
        raise ConfigError('expected an object', 'damping')
    kind = section.get('kind')
    if kind not in DAMPING_KEYS:
        raise ConfigError(f"unknown damping kind {kind!r}", 'damping.kind')
    _check_keys(section, DAMPING_KEYS[kind], 'damping')
    damping = _plain(section)
    try:
        damping_from_config(damping)
    except SymbolError as e:
        raise ConfigError(str(e), 'damping') from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"malformed damping parameters: {e}", 'damping') from e
    return damping


def _parse_tolerances(section):
    merged = dict(DEFAULTS['tolerances'])
    if section is not None:
        _check_keys(section, set(merged), 'tolerances')
        merged.update(section)
    values = {}
    for key, value in merged.items():
        value = _as_float(value, f"tolerances.{key}")
        if value < 0:
            raise ConfigError('must be non-negative', f"tolerances.{key}")
        values[key] = value
    return Tolerances(**values)


def default_threads():
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def build_config(document):
    """ExperimentConfig from a decoded JSON document, defaults filled"""
    _check_keys(document, TOP_LEVEL_KEYS, '')
    experiment = document.get('experiment')
    if experiment is None:
        raise ConfigError('missing required key', 'experiment')
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{experiment}'", 'experiment')

    def get(key):
        return document.get(key, DEFAULTS[key])

    N_cap = _as_int(get('N_cap'), 'N_cap', 4)
    N_list = _as_list(get('N_list'), 'N_list', lambda v, p: _as_int(v, p, 4))
    for i, N in enumerate(N_list):
        if N > N_cap:
            raise ConfigError(f"N = {N} exceeds the cap {N_cap}", f"N_list[{i}]")
    if len(set(N_list)) != len(N_list):
        raise ConfigError('duplicate N values', 'N_list')

    epsilon = _as_float(get('epsilon'), 'epsilon')
    if not 0 <= epsilon < 0.5:
        raise ConfigError('must lie in [0, 0.5)', 'epsilon')
    c_list = _as_list(get('c_list'), 'c_list', _as_float)
    if any(c <= 0 for c in c_list):
        raise ConfigError('offsets must be positive', 'c_list')

    theme = get('theme')
    if theme not in ('light', 'dark'):
        raise ConfigError(f"unknown theme {theme!r}", 'theme')
    output_dir = get('output_dir')
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError('expected a directory path', 'output_dir')
    cache_dir = get('cache_dir')
    if cache_dir is not None and not isinstance(cache_dir, str):
        raise ConfigError('expected a directory path or null', 'cache_dir')
    threads = get('threads')
    threads = default_threads() if threads is None else _as_int(threads, 'threads', 1)

    return ExperimentConfig(
        experiment=experiment,
        map=_parse_map(document.get('map')),
        damping=_parse_damping(document.get('damping')),
        N_list=tuple(sorted(N_list)),
        n_list=_as_list(get('n_list'), 'n_list', lambda v, p: _as_int(v, p, 1)),
        c_list=c_list,
        lc_list=tuple(sorted(_as_list(get('lc_list'), 'lc_list', _as_float))),
        word_lengths=tuple(sorted(_as_list(get('word_lengths'), 'word_lengths',
                                           lambda v, p: _as_int(v, p, 1)))),
        samples=_as_int(get('samples'), 'samples', 1),
        seed=_as_int(get('seed'), 'seed', 0),
        output_dir=output_dir,
        cache_dir=cache_dir,
        threads=threads,
        theme=theme,
        delta=_as_float(get('delta'), 'delta'),
        kmax=_as_int(get('kmax'), 'kmax', 0),
        epsilon=epsilon,
        N_cap=N_cap,
        tolerances=_parse_tolerances(document.get('tolerances'))
    )


def parse_config(source):
    """Parse a config from a path, '-' for stdin, or an open text stream"""
    if hasattr(source, 'read'):
        text = source.read()
    elif source == '-':
        text = sys.stdin.read()
    else:
        try:
            with open(source, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}") from e
    return build_config(load_json(text))


def parse_config_text(text):
    return build_config(load_json(text))


def resolve_cache_dir(cfg, cli_value=None):
    """CLI flag, then QMAP_CACHE, then the config file"""
    return cli_value or os.environ.get('QMAP_CACHE') or cfg.cache_dir

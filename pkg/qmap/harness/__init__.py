"""
    Experiment Harness Package
    Strict JSON configs, the operator/spectrum cache, the grid runner and SVG figures
"""

from .config import (
    ExperimentConfig, MapConfig, Tolerances, DEFAULTS, EXPERIMENTS, parse_config,
    parse_config_text, resolve_cache_dir
)
from .cache import OperatorCache, cache_key, CODE_VERSION
from .runner import RunReport, ExperimentRunner, run_experiment, render_csv, verify_manifest
from .plots import emit_plots

__all__ = [
    'ExperimentConfig', 'MapConfig', 'Tolerances', 'DEFAULTS', 'EXPERIMENTS', 'parse_config',
    'parse_config_text', 'resolve_cache_dir',
    'OperatorCache', 'cache_key', 'CODE_VERSION',
    'RunReport', 'ExperimentRunner', 'run_experiment', 'render_csv', 'verify_manifest',
    'emit_plots'
]

import csv
import io
import json
import os
import queue
from concurrent.futures import ThreadPoolExecutor, wait, FIRST_COMPLETED
from dataclasses import dataclass, field

import numpy as np

from ..classical import geometric_mean
from ..profiling import PerformanceMonitor, QualityMonitor
from ..quantization import damped_propagator
from ..spectral import spectrum_of
from ..utils import _queue_log_message, log_message, process_log_queue
from .cache import OperatorCache, atomic_write, cache_key, file_sha256
from .experiments import (
    EXTRA_SCHEMAS, SCHEMAS, RunContext, classical_stats, failed_row, finalize, point_rows,
    prepare, spectrum_rows
)
from .plots import emit_plots

POINTS_DIR = 'points'
FIGURES_DIR = 'figures'
REPORT_NAME = 'report.json'


@dataclass
class RunReport:
    """Config echo, CSV rows, output manifest, timing and the check ledger of one run"""
    config: dict
    config_sha256: str
    output_dir: str
    rows: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    manifest: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    failed: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failed

    def to_json(self):
        return json.dumps({
            'config': self.config,
            'config_sha256': self.config_sha256,
            'failed': self.failed,
            'manifest': self.manifest,
            'timing': self.timing,
            'checks': self.checks,
            'rows': self.rows,
            'tables': self.tables
        }, indent=2, sort_keys=True, default=_json_default)


def _json_default(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return str(value)


def format_value(value):
    """CSV text: floats with 17 significant digits"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return '%.17g' % float(value)
    return str(value)


def render_csv(columns, rows, config_sha256, seed):
    """Header, config-hash comment line, then the rows in the given order"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    buffer.write(f"# config-sha256={config_sha256} seed={seed}\n")
    for row in rows:
        writer.writerow({column: format_value(row.get(column)) for column in columns})
    return buffer.getvalue()


def manifest_entry(output_dir, path):
    return {
        'path': os.path.relpath(path, output_dir).replace(os.sep, '/'),
        'sha256': file_sha256(path),
        'bytes': os.path.getsize(path)
    }


def verify_manifest(report):
    """Paths in the manifest that are missing or no longer match their hash"""
    problems = []
    for entry in report.manifest:
        path = os.path.join(report.output_dir, entry['path'])
        if not os.path.exists(path):
            problems.append(f"{entry['path']}: missing")
        elif file_sha256(path) != entry['sha256']:
            problems.append(f"{entry['path']}: hash mismatch")
    return problems


class ExperimentRunner:
    """Runs one ExperimentConfig over its N grid"""

    def __init__(self, cfg, cache_dir=None):
        self.cfg = cfg
        self.log_queue = queue.Queue()
        self.quality = QualityMonitor()
        self.monitor = PerformanceMonitor()
        cache_dir = cache_dir if cache_dir is not None else cfg.cache_dir
        self.cache = OperatorCache(cache_dir, self.queue_log) if cache_dir else None
        self.files = []

    def queue_log(self, message, level='INFO'):
        _queue_log_message(self.log_queue, message, level)

    def drain(self):
        process_log_queue(self.log_queue)

    def write(self, relative, text):
        path = os.path.join(self.cfg.output_dir, relative)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        atomic_write(path, text)
        return path

    def compute_spectrum(self, N):
        """(SpectrumResult, M) for one N, through the cache when there is one"""
        spec = self.cfg.propagator_spec(N)
        key = cache_key(spec, self.cfg.map.alpha_text)
        if self.cache is not None:
            result = self.cache.load_spectrum(key)
            if result is not None:
                operator = self.cache.load_operator(key) or damped_propagator(spec)
                self.queue_log(f"N={N}: spectrum loaded from cache", 'DEBUG')
                return result, operator
        operator = damped_propagator(spec)
        result = spectrum_of(operator, spec.digest())
        if self.cache is not None:
            self.cache.store(key, operator, result)
        return result, operator

    def run_point(self, ctx, N):
        """Rows of one grid point; failures become a FAILED row"""
        try:
            self.queue_log(f"N={N}: computing spectrum", 'INFO')
            result, operator = self.compute_spectrum(N)
            rows = point_rows(ctx, N, result, operator)
            self.queue_log(f"N={N}: done (residual {result.residual:.2e})", 'INFO')
        except Exception as e:
            self.queue_log(f"N={N}: {type(e).__name__}: {e}", 'ERROR')
            return N, [failed_row(self.cfg.experiment, N)], None
        text = render_csv(SCHEMAS[self.cfg.experiment], rows, self.cfg.digest(), self.cfg.seed)
        self.write(f"{POINTS_DIR}/{self.cfg.experiment}_N{N}.csv", text)
        return N, rows, result

    def run_grid(self, ctx):
        results = {}
        with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
            pending = {pool.submit(self.run_point, ctx, N) for N in self.cfg.N_list}
            while pending:
                done, pending = wait(pending, timeout=0.2, return_when=FIRST_COMPLETED)
                self.drain()
                for future in done:
                    N, rows, result = future.result()
                    results[N] = (rows, result)
        self.drain()
        return results

    def spot_check_cache(self, spectra):
        """Cached spectrum against a fresh computation for the smallest N"""
        if self.cache is None or not spectra:
            return
        N = min(spectra)
        spec = self.cfg.propagator_spec(N)
        cached = self.cache.load_spectrum(cache_key(spec, self.cfg.map.alpha_text))
        self.drain()
        if cached is None:
            self.quality.record(f"cache N={N}", None, False, 'entry missing after the run')
            return
        fresh = spectrum_of(damped_propagator(spec), spec.digest())
        difference = float(np.max(np.abs(cached.eigenvalues - fresh.eigenvalues)))
        self.quality.record(f"cache N={N}", difference,
                            difference <= self.cfg.tolerances.cache)

    def emit_figures(self, ctx, spectra):
        cfg = self.cfg
        out = os.path.join(cfg.output_dir, FIGURES_DIR)
        radii = {'a_plus': ctx.damping.a_plus, 'a_minus': ctx.damping.a_minus, 'mean': ctx.mean}
        paths = []
        for N, result in sorted(spectra.items()):
            rows = spectrum_rows(N, result)
            if cfg.experiment in ('spectrum', 'weyl-law', 'large-dev'):
                paths.append(emit_plots(rows, 'scatter', out, cfg.theme, f"spectrum_N{N}",
                                        title=f"N = {N}", **radii))
            if cfg.experiment in ('weyl-law', 'angular'):
                paths.append(emit_plots(rows, 'density', out, cfg.theme, f"density_N{N}",
                                        title=f"N = {N}", mean=ctx.mean))
        return paths

    def run(self):
        os.makedirs(self.cfg.output_dir, exist_ok=True)
        self.monitor.start()
        try:
            return self._execute()
        finally:
            self.monitor.stop()
            self.drain()

    def _execute(self):
        cfg = self.cfg
        log_message(f"Running '{cfg.experiment}' over N = {list(cfg.N_list)} "
                    f"with {cfg.threads} worker(s)")
        cmap = cfg.classical_map()
        damping = cfg.damping_symbol()
        ctx = RunContext(cfg, cmap, damping, geometric_mean(damping), self.quality, self.queue_log)
        prepare(ctx)
        self.drain()

        paths = []
        failed = []
        if cfg.experiment == 'classical-stats':
            rows, tables = classical_stats(ctx)
            self.drain()
        else:
            results = self.run_grid(ctx)
            rows = []
            spectra = {}
            for N in cfg.N_list:
                point, result = results[N]
                rows.extend(point)
                if result is None:
                    failed.append(N)
                else:
                    spectra[N] = result
                    paths.append(os.path.join(cfg.output_dir, POINTS_DIR,
                                              f"{cfg.experiment}_N{N}.csv"))
            tables = finalize(ctx, rows)
            self.drain()
            self.spot_check_cache(spectra)
            paths.extend(self.emit_figures(ctx, spectra))
            if cfg.experiment == 'width-scan':
                ok = [r for r in rows if r['status'] == 'OK']
                if ok:
                    paths.append(emit_plots(ok, 'width', os.path.join(cfg.output_dir, FIGURES_DIR),
                                            cfg.theme, 'width', fit=ctx.params.get('fit'),
                                            title='Width of the radial distribution'))

        digest = cfg.digest()
        paths.insert(0, self.write(f"{cfg.experiment}.csv",
                                   render_csv(SCHEMAS[cfg.experiment], rows, digest, cfg.seed)))
        for name, table in sorted(tables.items()):
            paths.append(self.write(f"{name}.csv",
                                    render_csv(EXTRA_SCHEMAS[name], table, digest, cfg.seed)))

        report = RunReport(cfg.echo(), digest, cfg.output_dir, rows, tables,
                           [manifest_entry(cfg.output_dir, p) for p in paths],
                           failed=failed)
        problems = verify_manifest(report)
        self.quality.record('manifest', len(report.manifest), not problems, '; '.join(problems))
        self.monitor.stop()
        report.timing = self.monitor.summary()
        report.checks = self.quality.as_rows()
        atomic_write(os.path.join(cfg.output_dir, REPORT_NAME), report.to_json())

        for N in failed:
            log_message(f"N={N} marked FAILED", 'ERROR')
        log_message(f"Finished '{cfg.experiment}' in {report.timing['wall_s']}s; "
                    f"{len(report.manifest)} file(s) written to {cfg.output_dir}")
        return report


def run_experiment(cfg, cache_dir=None):
    """Run the experiment grid and write its CSV, SVG and report outputs"""
    return ExperimentRunner(cfg, cache_dir).run()

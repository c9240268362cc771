import math
from dataclasses import dataclass, field

import numpy as np

from ..classical import (
    anosov_bound_ok, birkhoff_extremes, deviation_distribution, is_monotone,
    large_dev_params, log_geometric_mean, rate_table
)
from ..spectral import (
    angular_moments, large_count, loglog_fit, strip_fraction, trace_sequence,
    weyl_inequality_check, width, window_fraction, log_window
)
from .config import ANOSOV_EXPERIMENTS

SCHEMAS = {
    'spectrum': ['N', 'j', 're', 'im', 'modulus', 'angle', 'status'],
    'weyl-law': ['N', 'mean', 'a_minus', 'a_plus', 'delta', 'strip_fraction', 'ei', 'es',
                 'extremes_fraction', 'epsilon', 'window', 'window_fraction', 'width',
                 'min_modulus', 'max_modulus', 'residual', 'weyl_min_slack', 'weyl_passed',
                 'status'],
    'width-scan': ['N', 'log_N', 'width', 'mean', 'strip_fraction', 'window_fraction',
                   'residual', 'status'],
    'angular': ['N', 'k', 'moment_re', 'moment_im', 'moment_abs', 'trace_re', 'trace_im',
                'trace_abs', 'status'],
    'large-dev': ['N', 'c', 'threshold', 'large_count', 'count_exponent', 'nu_hat', 'tau_c',
                  'rate', 'status'],
    'classical-stats': ['n', 'samples', 'mean_deviation', 'second_moment', 'status']
}

EXTRA_SCHEMAS = {
    'width_fit': ['A', 'B', 'residual', 'stderr_log_A', 'stderr_B', 'points'],
    'rate_table': ['n', 'lc', 'rate'],
    'large_dev_params': ['c', 'gamma', 'T', 'lc', 'rate', 'tau_c', 'nu', 'mean']
}

# Word length of the Birkhoff extremes reported next to the strip fraction
EXTREMES_WORD = 40


@dataclass
class RunContext:
    """Quantities shared by every grid point of one run"""
    cfg: object
    cmap: object
    damping: object
    mean: float
    checks: object
    log: object
    extremes: tuple = None
    params: dict = field(default_factory=dict)


def prepare(ctx):
    """Per-run classical inputs, computed once before the grid"""
    cfg = ctx.cfg
    ok = anosov_bound_ok(ctx.cmap)
    required = cfg.experiment in ANOSOV_EXPERIMENTS
    ctx.checks.record('anosov-bound', ctx.cmap.alpha, ok or not required,
                      f"alpha = {ctx.cmap.alpha} (Anosov for alpha < 0.33)")
    if cfg.experiment == 'weyl-law':
        ctx.extremes = birkhoff_extremes(ctx.damping, ctx.cmap, EXTREMES_WORD)
    if cfg.experiment == 'large-dev':
        n = max(cfg.word_lengths)
        stats = deviation_distribution(ctx.damping, ctx.cmap, n, cfg.samples, cfg.seed,
                                       log_mean=log_geometric_mean(ctx.damping),
                                       workers=cfg.threads)
        table = rate_table([stats], cfg.lc_list)
        ctx.params['rate_table'] = [{'n': n, 'lc': lc, 'rate': rate} for lc, rate in table]
        for c in cfg.c_list:
            try:
                ctx.params[c] = large_dev_params(ctx.damping, ctx.cmap, table, c)
            except ValueError as e:
                ctx.log(f"No large-deviation exponent for c = {c}: {e}", 'WARNING')
                ctx.params[c] = None


def failed_row(experiment, N):
    row = {column: '' for column in SCHEMAS[experiment]}
    row.update({'N': N, 'status': 'FAILED'})
    return row


def spectrum_rows(N, result):
    return [
        {'N': N, 'j': j + 1, 're': float(lam.real), 'im': float(lam.imag),
         'modulus': float(r), 'angle': float(theta), 'status': 'OK'}
        for j, (lam, r, theta) in enumerate(zip(result.eigenvalues, result.moduli, result.angles))
    ]


def annulus_check(ctx, N, result):
    """Every modulus inside [min_j a(j/N), max_j a(j/N)] up to the tolerance"""
    if not ctx.damping.is_q_only:
        return
    a = ctx.damping(np.arange(N) / N)
    tol = ctx.cfg.tolerances.annulus
    lo, hi = float(result.moduli.min()), float(result.moduli.max())
    ctx.checks.record(f"annulus N={N}", [lo, hi], lo >= a.min() - tol and hi <= a.max() + tol,
                      f"moduli in [{lo:.12g}, {hi:.12g}], bounds [{a.min():.12g}, {a.max():.12g}]")


def point_rows(ctx, N, result, operator):
    """CSV rows of one grid point"""
    cfg = ctx.cfg
    experiment = cfg.experiment
    annulus_check(ctx, N, result)
    ctx.checks.record(f"residual N={N}", result.residual, not result.flagged)

    if experiment == 'spectrum':
        return spectrum_rows(N, result)

    if experiment == 'weyl-law':
        delta = cfg.delta
        ei, es = ctx.extremes
        reports = [weyl_inequality_check(result, operator, n) for n in cfg.n_list]
        for report in reports:
            ctx.checks.record(f"weyl N={N} n={report.n}", report.min_slack, report.passed,
                              f"worst k = {report.worst_index()}")
        return [{
            'N': N, 'mean': ctx.mean, 'a_minus': ctx.damping.a_minus,
            'a_plus': ctx.damping.a_plus, 'delta': delta,
            'strip_fraction': strip_fraction(result, ctx.mean - delta, ctx.mean + delta),
            'ei': ei, 'es': es,
            'extremes_fraction': strip_fraction(result, ei - delta, es + delta),
            'epsilon': cfg.epsilon, 'window': log_window(N, cfg.epsilon),
            'window_fraction': window_fraction(result, ctx.mean, cfg.epsilon),
            'width': width(result),
            'min_modulus': float(result.moduli.min()), 'max_modulus': float(result.moduli.max()),
            'residual': result.residual,
            'weyl_min_slack': min(report.min_slack for report in reports),
            'weyl_passed': all(report.passed for report in reports),
            'status': 'OK'
        }]

    if experiment == 'width-scan':
        return [{
            'N': N, 'log_N': math.log(N), 'width': width(result), 'mean': ctx.mean,
            'strip_fraction': strip_fraction(result, ctx.mean - cfg.delta, ctx.mean + cfg.delta),
            'window_fraction': window_fraction(result, ctx.mean, cfg.epsilon),
            'residual': result.residual, 'status': 'OK'
        }]

    if experiment == 'angular':
        moments = angular_moments(result, cfg.kmax)
        traces = trace_sequence(operator, cfg.kmax)
        rows = []
        for k in range(1, cfg.kmax + 1):
            moment, trace = moments[k], traces[k - 1]
            rows.append({
                'N': N, 'k': k, 'moment_re': moment.real, 'moment_im': moment.imag,
                'moment_abs': abs(moment), 'trace_re': trace.real, 'trace_im': trace.imag,
                'trace_abs': abs(trace), 'status': 'OK'
            })
        return rows

    if experiment == 'large-dev':
        rows = []
        for c in cfg.c_list:
            count = large_count(result, ctx.mean, c)
            exponent = math.log(count) / math.log(1.0 / N) if count > 0 else math.inf
            params = ctx.params.get(c)
            nu = params.nu if params else math.nan
            if params and count > 0:
                ctx.checks.record(f"count-exponent N={N} c={c}", exponent, exponent >= nu - 0.5,
                                  f"measured {exponent:.4g} against nu_hat {nu:.4g}")
            rows.append({
                'N': N, 'c': c, 'threshold': ctx.mean + c, 'large_count': count,
                'count_exponent': exponent, 'nu_hat': nu,
                'tau_c': params.tau_c if params else math.nan,
                'rate': params.rate if params else math.nan, 'status': 'OK'
            })
        return rows

    raise ValueError(f"unknown experiment '{experiment}'")


def finalize(ctx, rows):
    """Cross-N checks and extra tables once all points are in"""
    cfg = ctx.cfg
    ok = [r for r in rows if r['status'] == 'OK']
    tables = {}

    if cfg.experiment == 'weyl-law' and len(ok) > 1:
        fractions = [r['strip_fraction'] for r in ok]
        ctx.checks.record('strip-fraction not below the first N', fractions,
                          fractions[-1] >= fractions[0])

    if cfg.experiment == 'width-scan':
        widths = [r['width'] for r in ok]
        if len(ok) > 1:
            ctx.checks.record('width below the first N', widths, widths[-1] < widths[0])
        points = [(r['N'], r['width']) for r in ok if r['width'] > 0]
        if len(points) >= 3:
            fit = loglog_fit(points)
            ctx.params['fit'] = fit
            ctx.checks.record('width-fit B > 0', fit.B, fit.B > 0,
                              f"A = {fit.A:.6g}, B = {fit.B:.6g} +- {fit.stderr_B:.2g}")
            tables['width_fit'] = [{
                'A': fit.A, 'B': fit.B, 'residual': fit.residual,
                'stderr_log_A': fit.stderr_log_A, 'stderr_B': fit.stderr_B,
                'points': ' '.join(f"{N}:{W!r}" for N, W in fit.points)
            }]
        else:
            ctx.log('Fewer than 3 usable widths; no fit', 'WARNING')

    if cfg.experiment == 'large-dev':
        for c in cfg.c_list:
            counts = [r['large_count'] for r in ok if r['c'] == c]
            if len(counts) > 1:
                ctx.checks.record(f"large-count not above the first N c={c}", counts,
                                  counts[-1] <= counts[0])
        tables['rate_table'] = ctx.params.get('rate_table', [])
        tables['large_dev_params'] = [
            {'c': c, 'gamma': p.gamma, 'T': p.T, 'lc': p.lc, 'rate': p.rate,
             'tau_c': p.tau_c, 'nu': p.nu, 'mean': p.mean}
            for c, p in ((c, ctx.params.get(c)) for c in cfg.c_list) if p is not None
        ]
    return tables


def classical_stats(ctx):
    """Rows of E(n x_n^2) per word length and the rate table of the longest word"""
    cfg = ctx.cfg
    log_mean = log_geometric_mean(ctx.damping)
    rows, stats = [], []
    for n in cfg.word_lengths:
        s = deviation_distribution(ctx.damping, ctx.cmap, n, cfg.samples, cfg.seed,
                                   log_mean=log_mean, workers=cfg.threads)
        stats.append(s)
        rows.append({'n': n, 'samples': s.samples, 'mean_deviation': float(np.mean(s.values)),
                     'second_moment': s.second_moment, 'status': 'OK'})
        ctx.log(f"word length {n}: E(n x_n^2) = {s.second_moment:.6g}", 'INFO')

    moments = [r['second_moment'] for r in rows]
    ctx.checks.record('second-moment bounded', moments,
                      max(moments) <= 3 * moments[0] or moments[0] == 0,
                      'max over word lengths against 3x the shortest')
    table = rate_table(stats, cfg.lc_list)
    ctx.checks.record('rate monotone', [r for _, r in table],
                      is_monotone(table, cfg.tolerances.rate_monotone))
    longest = max(cfg.word_lengths)
    return rows, {'rate_table': [{'n': longest, 'lc': lc, 'rate': rate} for lc, rate in table]}

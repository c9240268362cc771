import os

import matplotlib
matplotlib.use('Agg')
from matplotlib.figure import Figure
from matplotlib.patches import Circle
import numpy as np

from ..spectral import integrated_density
from ..style import font, themes
from .cache import atomic_write

PLOT_KINDS = ('scatter', 'density', 'width')

# Fixed salt and no date: identical input gives identical SVG bytes
SVG_RC = {'svg.hashsalt': 'qmap', 'svg.fonttype': 'path'}


def _figure(theme, size):
    fig = Figure(figsize=size, facecolor=theme['figure_bg'])
    return fig


def _style_axes(ax, theme, title, xlabel, ylabel):
    ax.set_facecolor(theme['axes_bg'])
    ax.set_title(title, color=theme['text_fg'], fontsize=font['title'])
    ax.set_xlabel(xlabel, color=theme['text_fg'], fontsize=font['axis_label'])
    ax.set_ylabel(ylabel, color=theme['text_fg'], fontsize=font['axis_label'])
    ax.tick_params(colors=theme['axis_fg'], labelsize=font['tick_label'])
    for spine in ax.spines.values():
        spine.set_color(theme['axis_fg'])
    ax.grid(True, color=theme['grid'], linewidth=0.5)


def _save(fig, path):
    with matplotlib.rc_context(SVG_RC):
        staging = f"{path}.svg-staging"
        fig.savefig(staging, format='svg', metadata={'Date': None})
    with open(staging, 'r', encoding='utf-8') as f:
        text = f.read()
    os.remove(staging)
    atomic_write(path, text)
    return path


def reference_radii(a_plus, a_minus, mean):
    """Distinct circle radii with their roles; the mean wins over coinciding bounds"""
    radii = [('ref-mean', mean)]
    for name, radius in (('ref-a-plus', a_plus), ('ref-a-minus', a_minus)):
        if all(abs(radius - r) > 1e-12 for _, r in radii):
            radii.append((name, radius))
    return radii


def plot_scatter(rows, path, theme, a_plus, a_minus, mean, title=''):
    """Eigenvalues in the complex plane with dashed a+/a- circles and the plain <a> circle"""
    re = np.array([float(r['re']) for r in rows])
    im = np.array([float(r['im']) for r in rows])
    fig = _figure(theme, (5.0, 5.0))
    ax = fig.add_subplot(1, 1, 1)
    _style_axes(ax, theme, title, 'Re λ', 'Im λ')
    points, = ax.plot(re, im, linestyle='none', marker='o', markersize=2,
                      color=theme['eigenvalue'])
    points.set_gid('eigenvalues')
    for gid, radius in reference_radii(a_plus, a_minus, mean):
        mean_circle = gid == 'ref-mean'
        circle = Circle((0.0, 0.0), radius, fill=False,
                        linestyle='-' if mean_circle else '--', linewidth=0.8,
                        edgecolor=theme['ref_mean'] if mean_circle else theme['ref_bound'])
        circle.set_gid(gid)
        ax.add_patch(circle)
    limit = 1.05 * max(a_plus, float(np.max(np.hypot(re, im))) if re.size else 0.0, 1e-3)
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    ax.set_aspect('equal')
    return _save(fig, path)


def plot_density(rows, path, theme, mean, title=''):
    """Integrated radial density (vertical bar at <a>) next to the angular one"""
    radial_steps = integrated_density([r['modulus'] for r in rows])
    angular_steps = integrated_density([r['angle'] for r in rows])
    fig = _figure(theme, (9.0, 4.0))
    radial = fig.add_subplot(1, 2, 1)
    angular = fig.add_subplot(1, 2, 2)
    _style_axes(radial, theme, title, 'r', 'h #{|λ| ≤ r}')
    _style_axes(angular, theme, '', 'θ', 'h #{arg λ / 2π ≤ θ}')

    x, y = radial_steps
    line, = radial.step(x, y, where='post', color=theme['data_line'], linewidth=1.0)
    line.set_gid('radial-density')
    bar = radial.axvline(mean, color=theme['ref_mean'], linewidth=0.8)
    bar.set_gid('ref-mean')

    x, y = angular_steps
    line, = angular.step(x, y, where='post', color=theme['angular_line'], linewidth=1.0)
    line.set_gid('angular-density')
    uniform, = angular.plot([0.0, 1.0], [0.0, 1.0], linestyle=':', color=theme['ref_bound'],
                            linewidth=0.8)
    uniform.set_gid('ref-uniform')
    angular.set_xlim(0.0, 1.0)
    return _save(fig, path)


def plot_width(rows, path, theme, fit=None, title=''):
    """Width against N with the fitted A (log N)^-B curve"""
    ok = [r for r in rows if r.get('status', 'OK') == 'OK']
    N = np.array([int(r['N']) for r in ok], dtype=float)
    W = np.array([float(r['width']) for r in ok])
    fig = _figure(theme, (6.0, 4.0))
    ax = fig.add_subplot(1, 1, 1)
    _style_axes(ax, theme, title, 'N = 1/h', 'W_h')
    data, = ax.plot(N, W, marker='o', markersize=3, color=theme['data_line'], linewidth=1.0)
    data.set_gid('width-data')
    if fit is not None:
        grid = np.linspace(N.min(), N.max(), 200)
        curve, = ax.plot(grid, fit.predict(grid), color=theme['fit_line'], linewidth=1.0,
                         label=f"A = {fit.A:.3f}, B = {fit.B:.3f}")
        curve.set_gid('width-fit')
        ax.legend(fontsize=font['legend'])
    ax.set_xscale('log')
    return _save(fig, path)


def emit_plots(rows, kind, out_dir, theme='light', name=None, **context):
    """Write the SVG figure of one kind and return its path"""
    rows = list(rows)
    if not rows:
        raise ValueError('no rows to plot')
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind '{kind}'")
    palette = themes[theme] if isinstance(theme, str) else theme
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name or kind}.svg")
    title = context.pop('title', '')
    if kind == 'scatter':
        return plot_scatter(rows, path, palette, context['a_plus'], context['a_minus'],
                            context['mean'], title)
    if kind == 'density':
        return plot_density(rows, path, palette, context['mean'], title)
    return plot_width(rows, path, palette, context.get('fit'), title)

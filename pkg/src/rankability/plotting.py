"""SVG figures for experiment scatter data and season time series."""

import numpy as np
from matplotlib.figure import Figure

_SVG_META = {"Date": None}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata=_SVG_META)


def scatter_svg(label, series, path, title=None):
    """One panel per measure: measure value against the generating label."""
    names = [k for k, v in series.items() if v is not None]
    fig = Figure(figsize=(4 * max(len(names), 1), 4), tight_layout=True)
    for i, name in enumerate(names):
        ax = fig.add_subplot(1, len(names), i + 1)
        ax.scatter(label, series[name], s=4, alpha=0.5)
        ax.set_xlabel("label")
        ax.set_ylabel(name)
        ax.set_xlim(0, 1)
    if title:
        fig.suptitle(title)
    _save(fig, path)


def timeseries_svg(seasons, series, path):
    fig = Figure(figsize=(max(6, 0.25 * len(seasons)), 4), tight_layout=True)
    ax = fig.add_subplot(1, 1, 1)
    x = np.arange(len(seasons))
    for name, values in series.items():
        y = np.array([np.nan if v is None else v for v in values], dtype=float)
        ax.plot(x, y, marker=".", label=name)
    step = max(1, len(seasons) // 20)
    ax.set_xticks(x[::step])
    ax.set_xticklabels([seasons[i] for i in x[::step]], rotation=90)
    ax.set_ylim(0, 1.02)
    ax.set_ylabel("rankability")
    ax.legend()
    _save(fig, path)


def scatter_matrix_svg(series, rho, path):
    """Pairwise scatter plots annotated with the Spearman coefficient."""
    names = list(series)
    k = len(names)
    fig = Figure(figsize=(2.5 * k, 2.5 * k), tight_layout=True)
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            ax = fig.add_subplot(k, k, i * k + j + 1)
            if i == j:
                ax.hist(series[a], bins=15)
                ax.set_title(a)
            else:
                ax.scatter(series[b], series[a], s=6)
                ax.set_title(f"rho={rho[i][j]:.3f}", fontsize=8)
    _save(fig, path)

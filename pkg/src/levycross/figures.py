"""Matplotlib renderings of the report artifacts.

Everything draws on the non-interactive Agg backend and is written to
files; nothing here opens a window.  These are convenience views of the
CSV/JSON outputs, not the outputs themselves.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .autocorr import AcfResult
from .crossover import AlphaTrajectory
from .stable import StableGrid, StableParams

__all__ = [
    "fig_alpha_trajectory",
    "fig_kurtosis",
    "fig_acf",
    "fig_distribution",
    "save_figure",
]


def fig_alpha_trajectory(traj: AlphaTrajectory, *, alpha_threshold: float | None = None):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogx(traj.levels, traj.alphas, "o-", ms=4, label=traj.source_label or "fitted index")
    if alpha_threshold is not None:
        ax.axhline(alpha_threshold, color="crimson", lw=0.8, ls="--",
                   label=f"threshold {alpha_threshold}")
    ax.axhline(2.0, color="gray", lw=0.8)
    ax.set_xlabel("aggregation level")
    ax.set_ylabel("fitted stability index")
    ax.set_ylim(1.0, 2.05)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    return fig


def fig_kurtosis(kurt_points, *, n_c: int | None = None):
    levels = np.array([l for l, _ in kurt_points], dtype=float)
    kurt = np.array([k for _, k in kurt_points], dtype=float)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    positive = kurt > 0
    ax.loglog(levels[positive], kurt[positive], "s-", ms=4, color="darkslateblue")
    if np.any(~positive):
        ax.plot(levels[~positive], np.full(np.count_nonzero(~positive), np.nan))
    if n_c is not None:
        ax.axvline(n_c, color="crimson", lw=0.8, ls="--", label=f"crossover at {n_c}")
        ax.legend(fontsize=8)
    ax.set_xlabel("aggregation level")
    ax.set_ylabel("excess kurtosis")
    fig.tight_layout()
    return fig


def fig_acf(result: AcfResult, *, title: str = ""):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    lags = result.lags[1:]
    ax.plot(lags, result.coefficients[1:], lw=0.9, color="black")
    ax.axhline(result.band, color="crimson", lw=0.8, ls="--")
    ax.axhline(-result.band, color="crimson", lw=0.8, ls="--")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("lag")
    ax.set_ylabel("autocorrelation")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    return fig


def fig_distribution(values, params: StableParams, *, bins: int = 120):
    values = np.asarray(values, dtype=float)
    lo, hi = np.quantile(values, [0.001, 0.999])
    span = hi - lo
    edges = np.linspace(lo - 0.05 * span, hi + 0.05 * span, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    density, _ = np.histogram(values, bins=edges, density=True)
    grid = StableGrid(params)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(centers, np.where(density > 0, density, np.nan), ".",
                ms=4, color="gray", label="data")
    ax.semilogy(centers, grid.pdf(centers), lw=1.2, color="darkslateblue",
                label=f"stable fit (index {params.alpha:.3f})")
    sigma = values.std()
    gauss = np.exp(-((centers - values.mean()) ** 2) / (2 * sigma**2)) / (sigma * np.sqrt(2 * np.pi))
    ax.semilogy(centers, gauss, lw=0.9, ls="--", color="crimson", label="gaussian")
    ax.set_xlabel("return")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def save_figure(fig, path, *, dpi: int = 120) -> None:
    fig.savefig(path, dpi=dpi)
    plt.close(fig)

"""Matplotlib rendering of the report tables.

Every figure is rendered with the Agg backend at fixed size/DPI and with
pinned PNG metadata, so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_curve_figure", "save_tail_figure", "save_histogram_figure"]

_SAVEKW = dict(dpi=120, metadata={"Software": "stablemc"})


def _new_axes(xlabel, ylabel, title):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def save_curve_figure(path, x, curves, xlabel, ylabel, title, logy=False):
    """Plot named curves over a common abscissa and save as PNG."""
    fig, ax = _new_axes(xlabel, ylabel, title)
    for label, y in curves.items():
        ax.plot(x, y, label=label, linewidth=1.4)
    if logy:
        ax.set_yscale("log")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVEKW)
    plt.close(fig)


def save_tail_figure(path, x, exact, approx, title):
    """Log-log tail plot: exact curves as lines, approximations as circles."""
    fig, ax = _new_axes("threshold", "P(X > x)", title)
    for label, y in exact.items():
        y = np.asarray(y)
        mask = y > 0
        ax.plot(np.asarray(x)[mask], y[mask], label=label, linewidth=1.4)
    for label, y in approx.items():
        y = np.asarray(y)
        mask = y > 0
        ax.plot(np.asarray(x)[mask][::4], y[mask][::4], "o", markersize=3,
                fillstyle="none", label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, **_SAVEKW)
    plt.close(fig)


def save_histogram_figure(path, values, density_x, density_y, title):
    """Sample histogram against the analytic density, clipped to the bulk.

    Bar heights are counts / (total n * bin width), so the truncated view
    stays on the same scale as the full density.
    """
    values = np.asarray(values, dtype=float)
    lo, hi = np.quantile(values, [0.001, 0.95])
    counts, edges = np.histogram(values, bins=120, range=(lo, hi))
    width = edges[1] - edges[0]
    heights = counts / (len(values) * width)
    fig, ax = _new_axes("value (s)", "density (1/s)", title)
    ax.bar(edges[:-1], heights, width=width, align="edge", alpha=0.5, label="samples")
    mask = (np.asarray(density_x) >= lo) & (np.asarray(density_x) <= hi)
    ax.plot(np.asarray(density_x)[mask], np.asarray(density_y)[mask],
            "r-", linewidth=1.4, label="analytic pdf")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVEKW)
    plt.close(fig)

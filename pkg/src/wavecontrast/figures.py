"""Figure rendering for report paths.

All figures are rendered with the Agg backend straight to PNG files so
runs on headless machines behave the same as interactive ones.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_DPI = 120


def save_profile_figure(t: np.ndarray, w_equal: np.ndarray, w_reciprocal: np.ndarray,
                        path, title: str) -> None:
    """Plot both localisation weight profiles over time."""
    fig, axes = plt.subplots(2, 1, figsize=(8, 5), sharex=True)
    axes[0].plot(t, w_equal, color="C0", lw=1.0)
    axes[0].set_ylabel("scheme (i): equal")
    axes[0].set_title(title)
    axes[1].plot(t, w_reciprocal, color="C1", lw=1.0)
    axes[1].set_ylabel("scheme (ii): reciprocal")
    axes[1].set_xlabel("t")
    for ax in axes:
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_fraction_figure(cells, path, title: str) -> None:
    """Grouped bar chart of rejection fractions by model and (T, alpha)."""
    models = sorted({c.model for c in cells}, key=lambda m: (m[0], int(m[1:])))
    groups = sorted({(c.T, c.alpha) for c in cells})
    width = 0.8 / max(1, len(groups))
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(models)), 4))
    xs = np.arange(len(models))
    lookup = {(c.model, c.T, c.alpha): c.fraction for c in cells}
    for gi, (T, alpha) in enumerate(groups):
        heights = [lookup.get((m, T, alpha), np.nan) for m in models]
        ax.bar(xs + gi * width, heights, width=width, label=f"T={T}, alpha={alpha:g}")
    ax.set_xticks(xs + 0.4 - width / 2)
    ax.set_xticklabels(models)
    ax.set_ylabel("rejection fraction")
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_test_figure(x: np.ndarray, result, path) -> None:
    """Series with the argmax interval pair shaded, plus per-scale
    maxima against the critical value."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(8, 5),
                                   gridspec_kw={"height_ratios": [2, 1]})
    ax0.plot(np.arange(len(x)), x, color="0.3", lw=0.6)
    loc = result.argmax
    ax0.axvspan(loc.s_p, loc.e_p, color="C0", alpha=0.25, label="argmax interval p")
    ax0.axvspan(loc.s_q, loc.e_q, color="C1", alpha=0.25, label="argmax interval q")
    ax0.set_ylabel("x")
    ax0.legend(fontsize=8, loc="upper right")
    verdict = "reject" if result.reject else "accept"
    ax0.set_title(f"statistic {result.statistic:.3f} vs critical {result.critical_value:.3f} ({verdict})")
    scales = -np.arange(1, result.J_star + 1)
    ax1.bar(scales.astype(str), result.per_scale_max, color="C2")
    ax1.axhline(result.critical_value, color="C3", ls="--", lw=1.0, label="critical value")
    ax1.set_xlabel("scale")
    ax1.set_ylabel("max |standardized|")
    ax1.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)

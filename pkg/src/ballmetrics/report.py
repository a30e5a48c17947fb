"""Figure rendering for the command-line report paths.

Each function takes the same row dictionaries the CLI serializes and writes
one PNG next to the delimited output.  The Agg backend is forced before
pyplot is imported so the renderers work headless; figures carry no
timestamps, keeping artifacts reproducible byte-for-byte apart from library
version metadata.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "volume_figure",
    "threshold_figure",
    "curvature_figure",
    "embedding_figure",
]

_SAVE_OPTS = {"dpi": 150, "bbox_inches": "tight", "metadata": {"Software": "ballmetrics"}}


def volume_figure(rows: list[dict], path: str) -> str:
    """Closed-form invariant volume curve with Monte Carlo error bars."""
    r = np.array([row["r"] for row in rows])
    exact = np.array([row["closed_form"] for row in rows])
    mc = np.array([row["mc_estimate"] for row in rows])
    se = np.array([row["mc_se"] for row in rows])
    n = rows[0]["n"]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    order = np.argsort(r)
    ax.plot(r[order], exact[order], "-", color="tab:blue", label="closed form")
    ax.errorbar(r, mc, yerr=3.0 * se, fmt="o", ms=4, color="tab:orange",
                capsize=3, label="Monte Carlo (3 SE)")
    if exact.max() > 50.0 * max(exact.min(), 1e-12):
        ax.set_yscale("log")
    ax.set_xlabel("pseudohyperbolic radius r")
    ax.set_ylabel(f"invariant volume, n = {n}")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def threshold_figure(rows: list[dict], path: str) -> str:
    """Obstruction threshold K* as a function of the ball dimension."""
    n = [row["n"] for row in rows]
    t = [row["threshold"] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.step(n, t, where="mid", color="tab:blue")
    ax.plot(n, t, "o", color="tab:blue")
    ax.set_xlabel("ball dimension n")
    ax.set_ylabel("first infeasible K on the grid")
    ax.set_xticks(n)
    ax.grid(True, alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def curvature_figure(rows: list[dict], path: str) -> str:
    """Gaussian curvature versus radius with Richardson error bars."""
    r = np.hypot(np.array([row["z_re"] for row in rows]),
                 np.array([row["z_im"] for row in rows]))
    kappa = np.array([row["kappa"] for row in rows])
    err = np.array([row["est_error"] for row in rows])
    alpha_sq = np.array([row["alpha_sq"] for row in rows])
    label = rows[0].get("kernel", "")

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 6.0), sharex=True)
    ax1.errorbar(r, kappa, yerr=err, fmt="o", ms=3, color="tab:blue", capsize=2)
    ax1.set_ylabel("Gaussian curvature")
    ax1.grid(True, alpha=0.3)
    ax1.set_title(label)
    ax2.plot(r, alpha_sq, "o", ms=3, color="tab:orange")
    ax2.set_yscale("log")
    ax2.set_xlabel("|z|")
    ax2.set_ylabel("metric density alpha^2")
    ax2.grid(True, alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def embedding_figure(target: np.ndarray, achieved: np.ndarray, points: np.ndarray,
                     stress: float, path: str) -> str:
    """Target-vs-achieved distance scatter plus the first complex coordinate
    of the embedded configuration."""
    iu = np.triu_indices(target.shape[0], k=1)
    t, a = target[iu], achieved[iu]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    lim = max(1e-9, float(np.max(t)), float(np.max(a))) * 1.05
    ax1.plot([0.0, lim], [0.0, lim], "-", color="0.6", lw=1)
    ax1.plot(t, a, "o", ms=4, color="tab:blue")
    ax1.set_xlabel("target distance")
    ax1.set_ylabel("achieved distance")
    ax1.set_title(f"stress = {stress:.3e}")
    ax1.grid(True, alpha=0.3)

    first = points[:, 0]
    circle = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 200))
    ax2.plot(circle.real, circle.imag, "-", color="0.6", lw=1)
    ax2.plot(first.real, first.imag, "o", ms=5, color="tab:orange")
    for i, p in enumerate(first):
        ax2.annotate(str(i), (p.real, p.imag), fontsize=8,
                     textcoords="offset points", xytext=(4, 4))
    ax2.set_aspect("equal")
    ax2.set_xlabel("Re(first coordinate)")
    ax2.set_ylabel("Im(first coordinate)")
    ax2.grid(True, alpha=0.3)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path

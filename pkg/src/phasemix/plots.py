"""Figure rendering for the CLI report paths (headless, files only)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["spectrum_figure", "series_figure", "loglog_figure", "verify_figures"]


def spectrum_figure(eigenvalues, path: str, title: str = "superoperator spectrum") -> str:
    """Eigenvalues scattered against the unit circle."""
    w = np.asarray(eigenvalues, dtype=complex)
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    t = np.linspace(0.0, 2.0 * math.pi, 400)
    ax.plot(np.cos(t), np.sin(t), color="0.8", linewidth=1.0, zorder=1)
    ax.axhline(0.0, color="0.9", linewidth=0.8, zorder=0)
    ax.axvline(0.0, color="0.9", linewidth=0.8, zorder=0)
    ax.scatter(w.real, w.imag, s=36, color="tab:blue", edgecolor="black", linewidth=0.5, zorder=2)
    lim = max(1.1, float(np.abs(w).max()) * 1.1 if w.size else 1.1)
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def series_figure(indices, series: dict[str, np.ndarray], path: str,
                  title: str = "distance to I/d", logy: bool = True) -> str:
    """One or more distance series over the step index, log-y by default.

    Exact zeros cannot sit on a log axis; they are floored at 1e-18 so the
    curve stays visible while reading unambiguously as "at the floor".
    """
    n = np.asarray(indices)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, values in series.items():
        y = np.asarray(values, dtype=float)
        if logy:
            y = np.maximum(y, 1e-18)
        ax.plot(n, y, marker=".", markersize=4, linewidth=1.0, label=name)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("step n")
    ax.set_ylabel("Hilbert-Schmidt distance")
    ax.set_title(title)
    if len(series) > 1:
        ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def loglog_figure(sizes, errors, slope: float, path: str,
                  title: str = "Monte Carlo convergence") -> str:
    """Mean estimator error vs sample count on log-log axes with the fit line."""
    x = np.asarray(sizes, dtype=float)
    y = np.asarray(errors, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.loglog(x, y, marker="o", linewidth=1.0, label="mean HS error")
    anchor = y[0] * (x / x[0]) ** slope
    ax.loglog(x, anchor, linestyle="--", color="0.5", label=f"fit slope {slope:.3f}")
    ax.loglog(x, y[0] * (x / x[0]) ** -0.5, linestyle=":", color="tab:red", label="slope -1/2")
    ax.set_xlabel("samples N")
    ax.set_ylabel("mean ||MC - exact||")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def verify_figures(results, out_dir: str) -> list[str]:
    """Render whatever plottable series the claim results carry."""
    import os

    written = []
    for r in results:
        if not r.series:
            continue
        if r.key == "sigma-x":
            p = os.path.join(out_dir, "sigma-x-spectrum.png")
            written.append(spectrum_figure(r.series["eigenvalues"], p, "pauli-x mean channel spectrum"))
        elif r.key == "geometric-rate":
            curves = {}
            if "uniform_pi" in r.series:
                curves["uniform(-pi,pi)"] = r.series["uniform_pi"]["distance"]
                n = r.series["uniform_pi"]["n"]
            if "uniform_1" in r.series:
                p = os.path.join(out_dir, "geometric-rate-uniform1.png")
                s = r.series["uniform_1"]
                written.append(series_figure(s["n"], {"uniform(-1,1)": s["distance"]}, p,
                                             f"dft-4 iterates, rate g={s['g']:.4f}"))
            if curves:
                p = os.path.join(out_dir, "geometric-rate-uniformpi.png")
                written.append(series_figure(n, curves, p, "dft-4 iterates, uniform(-pi,pi)"))
        elif r.key == "monte-carlo":
            p = os.path.join(out_dir, "monte-carlo-convergence.png")
            written.append(loglog_figure(r.series["sizes"], r.series["errors"], r.series["slope"], p))
        elif r.key == "cesaro":
            p = os.path.join(out_dir, "cesaro-medians.png")
            fig, ax = plt.subplots(figsize=(6.0, 4.2))
            for name, data in r.series.items():
                ax.plot(data["checkpoints"], data["medians"], marker="o", label=name)
            ax.set_xscale("log")
            ax.set_yscale("log")
            ax.set_xlabel("step n")
            ax.set_ylabel("median Cesaro distance (30 seeds)")
            ax.set_title("running-average convergence")
            ax.legend()
            ax.grid(True, which="both", alpha=0.3)
            fig.tight_layout()
            fig.savefig(p, dpi=150)
            plt.close(fig)
            written.append(p)
    return written

"""Figure rendering for sweep and scaling outputs.

Figures are written straight to files (Agg backend); the CSV/JSON artifacts
remain the canonical outputs and plots are opt-in via the CLI ``--plot``
flag.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import system_size
from .output import subsystem_label

_COUPLING_LABEL = {"xy": r"$\gamma$", "ising": r"$g$"}


def _series_of(rows):
    """Split ordered rows into (rg_step, subsystem) series."""
    series = []
    i = 0
    while i < len(rows):
        j = i
        key = (rows[i].rg_step, rows[i].subsystem)
        while j < len(rows) and (rows[j].rg_step, rows[j].subsystem) == key:
            j += 1
        series.append((key, rows[i:j]))
        i = j
    return series


def plot_sweep(rows, path, dpi=150):
    """Coherence and |derivative| panels, one line per (step, subsystem)."""
    if not rows:
        raise ValueError("no rows to plot")
    model = rows[0].model
    xlabel = _COUPLING_LABEL.get(model, "coupling")
    fig, (ax_c, ax_d) = plt.subplots(2, 1, figsize=(7.0, 7.5), sharex=True)
    for (step, sub), chunk in _series_of(rows):
        xs = np.array([r.bare for r in chunk])
        cs = np.array([r.coherence for r in chunk])
        label = f"n={step}" if sub == () else f"n={step}, sites {subsystem_label(sub)}"
        ax_c.plot(xs, cs, lw=1.1, label=label)
        ds = [r.derivative for r in chunk]
        if all(d is not None for d in ds):
            ax_d.plot(xs, np.abs(np.array(ds)), lw=1.1)
    ax_c.set_ylabel(r"$C_{\ell_1}$")
    ax_c.legend(fontsize=8, ncol=2, frameon=False)
    ax_d.set_ylabel(r"$|dC_{\ell_1}/dx|$")
    ax_d.set_yscale("log")
    ax_d.set_xlabel(xlabel)
    for ax in (ax_c, ax_d):
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.suptitle(f"{model} coherence sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def plot_scaling(model, peaks, fit, path, dpi=150):
    """ln f vs ln N scatter with the least-squares line."""
    ln_n = np.array([np.log(system_size(model, p.rg_step)) for p in peaks])
    ln_f = np.array([np.log(p.f_max) for p in peaks])
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot(ln_n, ln_f, "o", ms=6)
    xs = np.linspace(ln_n.min(), ln_n.max(), 50)
    ax.plot(xs, fit.theta * xs + fit.intercept, "-", lw=1.2,
            label=rf"$\theta = {fit.theta:.3f}$, $r^2 = {fit.r_squared:.4f}$")
    ax.set_xlabel(r"$\ln N$")
    ax.set_ylabel(r"$\ln\,|dC/dx|_{max}$")
    ax.legend(frameon=False)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.suptitle(f"{model} derivative-peak scaling")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path

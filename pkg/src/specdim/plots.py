"""Figure renderers for the command-line reports.

Each function draws one PNG from already-computed report objects and
returns the written path.  Rendering is optional at the call sites; the
delimited outputs stay the primary artifact and carry the same columns
these figures draw.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")  # headless renders only; never a display backend

import matplotlib.pyplot as plt
import numpy as np

from .dimension import DimensionReport
from .eccentricity import DoublingProfile
from .heat import HeatTrace
from .orders import OrderEstimate

__all__ = [
    "counting_figure",
    "dimension_figure",
    "heat_figure",
    "oracle_figure",
    "order_figure",
    "profile_figure",
]

_DPI = 120


def _ratio_panel(ax, estimate: OrderEstimate, label: str) -> None:
    """Evidence-window ratios against their abscissae, estimate as a line."""
    if estimate.window_ratios:
        ts = np.array([t for t, _ in estimate.window_ratios])
        rs = np.array([r for _, r in estimate.window_ratios])
        ax.plot(ts, rs, marker=".", lw=1.0, color="tab:blue", label="window ratios")
        ax.set_xscale("log")
        n_tail = max(1, math.ceil(estimate.tail_fraction * ts.size))
        ax.axvspan(ts[-n_tail], ts[-1], color="tab:blue", alpha=0.08, lw=0)
    else:
        ax.text(0.5, 0.6, "exact (no sampling window)", ha="center",
                transform=ax.transAxes)
    if math.isfinite(estimate.value):
        ax.axhline(estimate.value, color="tab:red", lw=1.0, ls="--",
                   label=f"{label} = {estimate.value:.4g}")
    ax.set_xlabel("t")
    ax.set_ylabel("chord ratio")
    tag = "converged" if estimate.converged else "not converged"
    ax.set_title(f"{label} ({estimate.mode}, {tag}, spread {estimate.tail_spread:.2g})",
                 fontsize=10)
    ax.legend(loc="best", fontsize=8)


def order_figure(estimate: OrderEstimate, path: str, label: str = "order") -> str:
    fig, ax = plt.subplots(figsize=(7.0, 4.2), layout="constrained")
    _ratio_panel(ax, estimate, label)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def dimension_figure(report: DimensionReport, path: str) -> str:
    """Box-order evidence beside the Dixmier ratio trajectory."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11.0, 4.2), layout="constrained")
    _ratio_panel(ax1, report.box_estimate, "decay order")
    ax1.set_title(f"box dimension 1/order = {report.d_B:.4g}", fontsize=10)

    traj = report.dixmier
    if traj.ratios:
        ax2.plot(traj.log_ns, traj.ratios, marker=".", lw=1.0, color="tab:green")
        rs = np.asarray(traj.ratios)
        # off-critical exponents diverge along the deep schedule
        if np.all(rs > 0.0) and rs.max() > 1e3 * rs.min():
            ax2.set_yscale("log")
        ax2.axhline(traj.ratios[-1], color="tab:red", lw=1.0, ls="--",
                    label=f"final = {traj.ratios[-1]:.4g}")
        ax2.legend(loc="best", fontsize=8)
    ax2.set_xlabel("log n")
    ax2.set_ylabel(f"sigma_n({traj.d:.4g}) / log n")
    ax2.set_title(f"Dixmier trajectory ({traj.subsequence})", fontsize=10)

    lo, hi = report.hausdorff.d_lo, report.hausdorff.d_hi
    fig.suptitle(f"Hausdorff bracket [{lo:.4g}, {hi:.4g}]", fontsize=11)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def profile_figure(profile: DoublingProfile, path: str) -> str:
    """Doubling ratios with the tolerance band and witness markers."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2), layout="constrained")
    if profile.grid:
        ts = np.array([row[0] for row in profile.grid])
        rs = np.array([row[2] for row in profile.grid])
        ax.plot(ts, rs, lw=1.0, color="tab:blue", label="S(2t)/S(t)")
        ax.set_xscale("log")
    if profile.witnesses:
        wt = np.array([row[0] for row in profile.witnesses])
        wr = np.array([row[2] for row in profile.witnesses])
        ax.plot(wt, wr, "o", ms=4, color="tab:orange", label="witness")
    ax.axhspan(1.0 - profile.tol, 1.0 + profile.tol, color="tab:gray",
               alpha=0.15, lw=0)
    ax.axhline(1.0, color="tab:gray", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("doubling ratio")
    verdict = "clusters at 1" if profile.cluster_at_one else "no cluster at 1"
    ax.set_title(f"doubling profile toward {profile.end.name.lower()}: {verdict}",
                 fontsize=10)
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def heat_figure(trace: HeatTrace, estimate: OrderEstimate,
                sup_form: float, path: str) -> str:
    """Log-log trace with the fitted slope, plus the ratio window."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11.0, 4.2), layout="constrained")
    ax1.loglog(trace.times, trace.values, marker=".", lw=1.0,
               color="tab:blue", label="trace")
    if math.isfinite(estimate.value) and trace.times.size >= 2:
        # Guide line of slope -asdim/2 anchored at the last sample.
        t1, v1 = trace.times[-1], trace.values[-1]
        ts = np.array([trace.times[0], t1])
        ax1.loglog(ts, v1 * (ts / t1) ** (-0.5 * estimate.value), ls="--",
                   color="tab:red", lw=1.0,
                   label=f"slope -asdim/2, asdim = {estimate.value:.4g}")
    ax1.set_xlabel("t")
    ax1.set_ylabel("value")
    ax1.set_title("heat trace", fontsize=10)
    ax1.legend(loc="best", fontsize=8)

    _ratio_panel(ax2, estimate, "asdim")
    if math.isfinite(sup_form):
        ax2.axhline(sup_form, color="tab:purple", lw=1.0, ls=":",
                    label=f"sup form = {sup_form:.4g}")
        ax2.legend(loc="best", fontsize=8)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def counting_figure(counting, ns, path: str) -> str:
    """Counting staircase on log-log axes, NS numbers in the title."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2), layout="constrained")
    cum = np.cumsum(counting.jumps)
    ax.step(counting.levels, cum, where="post", color="tab:blue")
    positive = counting.levels > 0.0
    if np.count_nonzero(positive) >= 2:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("level")
    ax.set_ylabel("count")
    ax.set_title("spectral counting: "
                 f"lower {ns.alpha_lower:.4g}, alpha {ns.alpha:.4g}, "
                 f"prime {ns.alpha_prime:.4g}", fontsize=10)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def oracle_figure(rows: list[dict], path: str) -> str:
    """Relative errors of each cross-check on a log scale."""
    fig, ax = plt.subplots(figsize=(7.0, 0.8 + 0.55 * max(len(rows), 1)),
                           layout="constrained")
    names = [row["name"] for row in rows]
    errors = [max(float(row["error"]), 1e-17) for row in rows]
    # exact checks carry tol 0; floor keeps the tick on the log axis
    tols = [max(float(row["tol"]), 1e-17) for row in rows]
    colors = ["tab:green" if row["passed"] else "tab:red" for row in rows]
    y = np.arange(len(rows))
    ax.barh(y, errors, color=colors, height=0.6)
    for yi, tol in zip(y, tols):
        ax.plot([tol, tol], [yi - 0.35, yi + 0.35], color="black", lw=1.2)
    ax.set_yticks(y, names)
    ax.set_xscale("log")
    ax.set_xlabel("relative error (bar) vs tolerance (tick)")
    ax.invert_yaxis()
    ax.set_title("oracle cross-checks", fontsize=10)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path

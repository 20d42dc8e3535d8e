"""Render experiment reports to PNG files.

Takes the plain-dict form of a report (ExperimentReport.to_dict) so it
can also be pointed at a JSON file loaded from disk.
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import ALL_TYPES


def _save(fig, out_dir, name):
    path = os.path.join(out_dir, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def _fig_deficit(report, out_dir):
    kappas = [t["kappa"] for t in report["trials"]]
    bound = report["params"]["bound"]
    fig, ax = plt.subplots(figsize=(6, 4))
    top = max(kappas + [int(bound) + 1])
    ax.hist(kappas, bins=range(0, top + 2), color="steelblue",
            edgecolor="white")
    ax.axvline(bound, color="crimson", linestyle="--",
               label=f"2 log2 n = {bound:.1f}")
    ax.set_xlabel("uncovered vertices")
    ax.set_ylabel("trials")
    ax.set_title(f"full mode, n={report['params']['n']}")
    ax.legend()
    return _save(fig, out_dir, "deficit_kappa.png")


def _fig_hybrid(report, out_dir):
    kappas = [t["kappa"] for t in report["trials"]]
    orders = [t["snapshot_order"] for t in report["trials"]]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.hist(kappas, bins=range(0, max(kappas) + 2), color="seagreen",
             edgecolor="white")
    ax1.set_xlabel("uncovered vertices")
    ax1.set_ylabel("trials")
    ax1.set_title("hybrid deficiency")
    ax2.hist(orders, bins=12, color="goldenrod", edgecolor="white")
    omega = report["params"]["omega"]
    ax2.axvline(omega, color="crimson", linestyle="--", label="window")
    ax2.axvline(2 * omega, color="crimson", linestyle="--")
    ax2.set_xlabel("snapshot order")
    ax2.set_title("stopped state size")
    ax2.legend()
    fig.suptitle(f"hybrid mode, n={report['params']['n']}")
    return _save(fig, out_dir, "hybrid_kappa.png")


def _fig_scaling(report, out_dir):
    med = report["aggregates"]["median_seconds"]
    ns = sorted(int(k) for k in med)
    ts = [med[str(n)] for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, ts, "o-", color="steelblue", label="median")
    if len(ns) > 1 and ts[0]:
        ref = [ts[0] * n / ns[0] for n in ns]
        ax.loglog(ns, ref, "--", color="gray", label="linear reference")
    ax.set_xlabel("n")
    ax.set_ylabel("reduce+unwind seconds")
    ax.set_title("runtime scaling")
    ax.legend()
    return _save(fig, out_dir, "scaling_time.png")


def _fig_drift(report, out_dir):
    hist = report["aggregates"]["type_histogram"]
    counts = [hist.get(t, 0) for t in ALL_TYPES]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(ALL_TYPES)), counts, color="steelblue")
    ax.set_xticks(range(len(ALL_TYPES)))
    ax.set_xticklabels(ALL_TYPES)
    ax.set_xlabel("hyperaction type")
    ax.set_ylabel("count")
    mean = report["aggregates"]["conditioned_mean"]
    label = "n/a" if mean is None else f"{mean:.3f}"
    ax.set_title(f"type histogram (conditioned drift mean {label})")
    return _save(fig, out_dir, "drift_types.png")


_RENDERERS = {
    "deficit": _fig_deficit,
    "hybrid": _fig_hybrid,
    "scaling": _fig_scaling,
    "drift": _fig_drift,
}


def render(report, out_dir):
    """Write the figures for one report dict; returns the file paths."""
    name = report.get("experiment")
    if name not in _RENDERERS:
        raise ValueError(f"no renderer for experiment {name!r}")
    if not report.get("trials"):
        raise ValueError("report has no trials to plot")
    os.makedirs(out_dir, exist_ok=True)
    return [_RENDERERS[name](report, out_dir)]

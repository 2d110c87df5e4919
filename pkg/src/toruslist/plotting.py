"""Figures for the linearity benchmark (written to files, never shown)."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: Sequence, path: str) -> str:
    """Touches per vertex and peak per-vertex touches against n, one line per case."""
    per_case = defaultdict(lambda: defaultdict(list))
    for row in rows:
        if row.excluded:
            continue
        per_case[row.case][row.n].append(row)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    for case in sorted(per_case):
        ns = sorted(per_case[case])
        mean = [sum(r.total_touches for r in per_case[case][n]) / len(per_case[case][n]) / n for n in ns]
        peak = [max(r.max_touches_per_vertex for r in per_case[case][n]) for n in ns]
        ax1.plot(ns, mean, marker="o", label=case)
        ax2.plot(ns, peak, marker="s", label=case)
    for ax in (ax1, ax2):
        ax.set_xscale("log")
        ax.set_xlabel("n (vertices)")
        ax.grid(True, alpha=0.3)
    ax1.set_ylabel("total touches / n")
    ax1.set_ylim(bottom=0)
    ax2.set_ylabel("max touches on one vertex")
    ax2.set_ylim(bottom=0)
    if per_case:
        ax1.legend()
    fig.suptitle("Touch counts across sizes")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

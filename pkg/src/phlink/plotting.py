"""Figures written next to evaluation reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams["axes.grid"] = True
plt.rcParams["axes.axisbelow"] = True
plt.rcParams["grid.alpha"] = 0.3
plt.rcParams["font.size"] = 11.0
plt.rcParams["legend.fontsize"] = "small"
plt.rcParams["savefig.dpi"] = 150
plt.rcParams["svg.hashsalt"] = "phlink"

LABELS = {"aa": "Adamic-Adar", "mw": "Milne-Witten", "topology": "Topology"}


def plot_hits(reports, path, title=None):
    """Grouped bar chart of Hits@N, one group per cutoff, one bar per method."""
    reports = list(reports)
    cutoffs = sorted({n for r in reports for n in r.hits})
    x = np.arange(len(cutoffs))
    width = 0.8 / max(len(reports), 1)

    fig, ax = plt.subplots(figsize=(1.8 + 1.4 * len(cutoffs), 3.4))
    for i, rep in enumerate(reports):
        vals = [rep.hits.get(n, np.nan) for n in cutoffs]
        bars = ax.bar(x + (i - (len(reports) - 1) / 2) * width, vals, width, label=LABELS.get(rep.method, rep.method))
        ax.bar_label(bars, fmt="%.2f", fontsize=7, padding=1)
    ax.set_xticks(x, [f"Hits@{n}" for n in cutoffs])
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("hit rate")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    # Fixed metadata keeps the file stable across runs.
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path

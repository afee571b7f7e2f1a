"""Delimited output and figures for the CLI report commands."""

from __future__ import annotations

import csv
import math
from fractions import Fraction

from .core import format_rational

FIG_WIDTH_PT = 345.0
INCHES_PER_PT = 1.0 / 72.27
GOLDEN = (math.sqrt(5) - 1.0) / 2.0


def cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Fraction, int, float)):
        return format_rational(value)
    return "" if value is None else str(value)


def write_csv(rows, fields, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([cell(row[f]) for f in fields])


def figure_size(scale=1.0):
    width = FIG_WIDTH_PT * INCHES_PER_PT * scale
    return (width, width * GOLDEN)


def plot_greedy_ratio(rows, path):
    """Ratio of motorway to greedy egalitarian cost against the budget.

    The bound ``(3 + alpha beta) / beta`` and its limit ``alpha`` are drawn
    for reference.  Written with the Agg backend; no display is needed.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    betas = [row["beta"] for row in rows]
    alpha = float(rows[0]["alpha"]) if rows else 0.0
    with plt.rc_context({"font.size": 9, "font.family": "serif", "axes.labelsize": 9,
                         "legend.fontsize": 8, "figure.figsize": figure_size()}):
        fig, ax = plt.subplots()
        ax.plot(betas, [float(row["ratio"]) for row in rows], "o-", color="k",
                label=r"$c^{EG}(S^*) / c^{EG}(S_\uparrow)$")
        ax.plot(betas, [float(row["ratio_bound"]) for row in rows], "s--", color="0.45",
                label=r"$(3 + \alpha\beta)/\beta$")
        ax.axhline(alpha, color="0.65", linestyle=":", label=r"$\alpha$")
        ax.set_xlabel(r"budget $\beta$")
        ax.set_ylabel("cost ratio")
        ax.set_xticks(betas)
        ax.spines["right"].set_visible(False)
        ax.spines["top"].set_visible(False)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path

"""Figure rendering for the report path: overview circle strips and
per-puzzle metric bars, written to image files next to the delimited
output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib import cm, colors

from .explore import PuzzleFragment, SessionOverview

MIN_RADIUS = 0.06
MAX_RADIUS = 0.42


def render_overview_figure(overview: SessionOverview, path: str, cmap: str = "YlOrRd") -> None:
    """Draw the session as a strip of circles, one per puzzle.

    Radius encodes the size metric, fill color the color metric; puzzles
    keep their manifest order left to right.
    """
    entries = overview.entries
    n = max(len(entries), 1)
    fig, ax = plt.subplots(figsize=(max(2.0, 1.6 * n), 2.8))
    colormap = matplotlib.colormaps[cmap]
    for i, entry in enumerate(entries):
        radius = MIN_RADIUS + entry.size_norm * (MAX_RADIUS - MIN_RADIUS)
        circle = plt.Circle(
            (i + 0.5, 0.55),
            radius,
            facecolor=colormap(entry.color_norm),
            edgecolor="black",
            linewidth=0.8,
        )
        ax.add_patch(circle)
        ax.text(i + 0.5, 0.02, entry.task, ha="center", va="bottom", fontsize=10)
    ax.set_xlim(0, n)
    ax.set_ylim(0, 1.1)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"size: {overview.size_metric}   color: {overview.color_metric}", fontsize=10)
    mappable = cm.ScalarMappable(norm=colors.Normalize(0, 1), cmap=colormap)
    fig.colorbar(mappable, ax=ax, fraction=0.05, pad=0.02, label=overview.color_metric)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def render_fragment_figure(fragments: list[PuzzleFragment], path: str, metric: str = "event_count") -> None:
    """Bar chart of one metric across puzzle fragments, in given order."""
    tasks = [f.task for f in fragments]
    values = [float(getattr(f.metrics, metric)) for f in fragments]
    fig, ax = plt.subplots(figsize=(max(2.0, 1.2 * len(tasks)), 3.0))
    ax.bar(range(len(tasks)), values, color="#4878a8", edgecolor="black", linewidth=0.6)
    ax.set_xticks(range(len(tasks)))
    ax.set_xticklabels(tasks, fontsize=9)
    ax.set_ylabel(metric)
    ax.set_xlabel("puzzle")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)

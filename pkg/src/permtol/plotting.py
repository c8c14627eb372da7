"""Matplotlib figures: Hasse diagrams with block ovals, catalog summaries."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Ellipse  # noqa: E402

from .lattice import Lattice  # noqa: E402
from .tolerance import BinaryRelation, blocks  # noqa: E402


def hasse_layout(L: Lattice) -> dict[int, tuple[float, float]]:
    """Rank-based coordinates; within a rank, order by mean position of lower covers."""
    pos: dict[int, tuple[float, float]] = {}
    levels: dict[int, list[int]] = {}
    for x in range(L.n):
        levels.setdefault(L.rank[x], []).append(x)
    for r in sorted(levels):
        row = levels[r]
        if r > 0:
            row.sort(key=lambda x: (sum(pos[z][0] for z in L.lower_covers[x])
                                    / max(len(L.lower_covers[x]), 1), x))
        width = len(row)
        for i, x in enumerate(row):
            pos[x] = (i - (width - 1) / 2, float(r))
    return pos


def _block_oval(p, q, **style):
    (x0, y0), (x1, y1) = p, q
    length = math.hypot(x1 - x0, y1 - y0)
    angle = math.degrees(math.atan2(y1 - y0, x1 - x0))
    return Ellipse(((x0 + x1) / 2, (y0 + y1) / 2), length + 0.45, 0.38, angle=angle,
                   fill=False, **style)


def plot_hasse(L: Lattice, T: Optional[BinaryRelation] = None, S: Optional[BinaryRelation] = None,
               path: Optional[str | Path] = None, ax=None):
    """Draw ``L`` bottom-up; T-blocks as solid grey ovals, S-blocks as dotted black ones."""
    pos = hasse_layout(L)
    own = ax is None
    if own:
        widest = max(L.rank.count(r) for r in set(L.rank))
        fig, ax = plt.subplots(figsize=(1.2 + 0.6 * widest, 1.2 + 0.8 * (L.height + 1)))
    for x, y in L.cover_pairs:
        ax.plot([pos[x][0], pos[y][0]], [pos[x][1], pos[y][1]], color="black", lw=1, zorder=1)
    for x, (px, py) in pos.items():
        ax.scatter([px], [py], s=60, color="white", edgecolor="black", zorder=3)
        ax.annotate(str(x), (px, py), xytext=(6, -3), textcoords="offset points", fontsize=7)
    styles = ((T, dict(edgecolor="0.6", linestyle="solid", lw=2.5)),
              (S, dict(edgecolor="black", linestyle="dotted", lw=1.5)))
    for rel, style in styles:
        if rel is None:
            continue
        for block in blocks(L, rel):
            if len(block) == 2:
                ax.add_patch(_block_oval(pos[block.elements[0]], pos[block.elements[1]], **style))
    ax.set_aspect("equal")
    ax.axis("off")
    ax.margins(0.25)
    if own and path is not None:
        ax.figure.savefig(path, bbox_inches="tight", dpi=150)
        plt.close(ax.figure)
    return ax


def plot_catalog_summary(report, path: str | Path) -> None:
    """Grouped bars of tolerance pairs, amicable pairs and permuting pairs per lattice size."""
    rows = report.rows
    ns = [r.n for r in rows]
    series = (("pairs", [r.pairs for r in rows], "0.8"),
              ("amicable", [r.amicable for r in rows], "0.45"),
              ("permuting", [r.permuting for r in rows], "black"))
    fig, ax = plt.subplots(figsize=(5, 3))
    w = 0.27
    for i, (label, values, colour) in enumerate(series):
        ax.bar([n + (i - 1) * w for n in ns], values, width=w, label=label, color=colour)
    ax.set_xticks(ns)
    ax.set_xlabel("lattice size n")
    ax.set_ylabel("ordered pairs (T, S)")
    ax.set_yscale("log")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

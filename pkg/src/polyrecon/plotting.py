"""Report figures written to image files (Agg backend, no display needed)."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from polyrecon.graphs import Graph  # noqa: E402
from polyrecon.lattice import FaceLattice  # noqa: E402

GOOD_COLOR = "#2a9d8f"
OTHER_COLOR = "#b0b7c3"
CAP_COLOR = "#e76f51"


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)


def score_histogram(scores: Sequence[int], f: int, path: str, title: str = "") -> None:
    """Number of acyclic orientations per sink-count score; the minimum
    (the good orientations) is highlighted."""
    counts = Counter(scores)
    xs = sorted(counts)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.bar(xs, [counts[x] for x in xs], color=[GOOD_COLOR if x == f else OTHER_COLOR for x in xs], width=0.8)
    ax.axvline(f, color=GOOD_COLOR, linestyle="--", linewidth=1)
    ax.set_xlabel("sink-count score $f^O$")
    ax.set_ylabel("acyclic orientations")
    ax.set_title(title or f"minimum {f} attained by {counts[f]} of {len(scores)}")
    ax.spines[["top", "right"]].set_visible(False)
    _finish(fig, path)


def f_vector_bars(lattices: Mapping[str, FaceLattice], path: str, title: str = "") -> None:
    """Grouped bars of the f-vectors of several lattices."""
    names = list(lattices)
    dmax = max(lat.dimension for lat in lattices.values())
    width = 0.8 / max(len(names), 1)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for i, name in enumerate(names):
        fv = list(lattices[name].f_vector[:-1])
        xs = [r + (i - (len(names) - 1) / 2) * width for r in range(len(fv))]
        ax.bar(xs, fv, width=width, label=name)
    ax.set_xticks(range(dmax))
    ax.set_xlabel("face dimension")
    ax.set_ylabel("number of faces")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    ax.spines[["top", "right"]].set_visible(False)
    _finish(fig, path)


def dual_graph_figure(dg: Graph, path: str, caps: Sequence[int] = (), title: str = "") -> None:
    """Circular drawing of a dual graph with detected caps marked."""
    n = dg.n_nodes
    pos = {v: (math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n)) for v in range(n)}
    fig, ax = plt.subplots(figsize=(5, 5))
    for a, b in dg.edges:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color=OTHER_COLOR, linewidth=0.8, zorder=1)
    cap_set = set(caps)
    ax.scatter([pos[v][0] for v in range(n)], [pos[v][1] for v in range(n)],
               c=[CAP_COLOR if v in cap_set else GOOD_COLOR for v in range(n)], s=120, zorder=2)
    for v in range(n):
        ax.annotate(str(v), pos[v], ha="center", va="center", fontsize=7, color="white", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title or f"dual graph, {len(cap_set)} cap(s) detected")
    _finish(fig, path)

"""Figures written next to the reproduction report.

Everything renders with the Agg backend straight to PNG files; nothing here
opens a window.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lattice import FaceLattice  # noqa: E402


def _size(width: float = 6.0, height: float | None = None) -> tuple:
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    return width, height or width * golden_ratio


def _edges(L: FaceLattice) -> list:
    P = L.polytope
    return [tuple(P.vertices[k] for k in e.vertex_ids()) for e in L.faces_of_dim(1)]


def plot_f_vector(L: FaceLattice, path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=_size())
    f = L.f_vector
    ax.bar(range(len(f)), f, color="0.4")
    for k, c in enumerate(f):
        ax.text(k, c, str(c), ha="center", va="bottom", fontsize=9)
    ax.set_xticks(range(len(f)))
    ax.set_xlabel("face dimension")
    ax.set_ylabel("number of faces")
    ax.set_title(title or f"f-vector, s = {L.s}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_polytope_3d(L: FaceLattice, path, section: FaceLattice | None = None, axis: int = 2, title: str = "") -> Path:
    """Wireframe of a 3-polytope; an optional coordinate section is drawn in red."""
    fig = plt.figure(figsize=_size(6, 6))
    ax = fig.add_subplot(projection="3d")
    for a, b in _edges(L):
        ax.plot(*[[float(a[i]), float(b[i])] for i in range(3)], color="k", lw=1)
    for v in L.polytope.vertices:
        ax.scatter(*[float(c) for c in v], color="k", s=10)
    if section is not None:
        keep = [i for i in range(3) if i != axis]
        for a, b in _edges(section):
            pa = [0.0, 0.0, 0.0]
            pb = [0.0, 0.0, 0.0]
            for k, i in enumerate(keep):
                pa[i], pb[i] = float(a[k]), float(b[k])
            ax.plot(*zip(pa, pb), color="tab:red", lw=2)
    ax.set_xlabel("$x_1$")
    ax.set_ylabel("$x_2$")
    ax.set_zlabel("$x_3$")
    ax.set_box_aspect(None, zoom=0.85)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_graph(G, path, title: str = "") -> Path:
    """Coordinate graph drawn with vertices on a circle, labelled 1..n."""
    fig, ax = plt.subplots(figsize=_size(4, 4))
    pos = [
        (math.cos(2 * math.pi * k / G.n + math.pi / 2), math.sin(2 * math.pi * k / G.n + math.pi / 2))
        for k in range(G.n)
    ]
    for i, j in G.edges:
        ax.plot([pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]], color="0.3", lw=1.5, zorder=1)
    for k, (x, y) in enumerate(pos):
        ax.scatter([x], [y], s=300, color="white", edgecolors="k", zorder=2)
        ax.text(x, y, str(k + 1), ha="center", va="center", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_mahler(rows: list, path) -> Path:
    """rows: (d, computed, expected) triples, plotted on a log scale."""
    fig, ax = plt.subplots(figsize=_size())
    ds = [r[0] for r in rows]
    ax.semilogy(ds, [float(r[2]) for r in rows], "k-", label="$4^d/d!$")
    ax.semilogy(ds, [float(r[1]) for r in rows], "o", color="tab:red", label="computed")
    ax.set_xlabel("d")
    ax.set_ylabel("Mahler volume")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)

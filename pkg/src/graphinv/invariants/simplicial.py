"""Clique-complex skeleton: simplices by dimension and oriented boundary
incidence matrices, from which Hodge Laplacians are assembled.

Simplices are ordered lexicographically with orientation induced by
sorted vertex ids, so every intermediate matrix is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..graph import Graph, adjacency_sets
from ..linalg import SymMatrix, sym_matrix


@dataclass(frozen=True)
class SimplicialSkeleton:
    """Simplices of the clique complex up to a dimension cap, plus the
    boundary matrices B_p (B_0 = 0)."""

    simplices: tuple[tuple[tuple[int, ...], ...], ...]  # [dim][index] -> vertex tuple
    boundaries: tuple[np.ndarray, ...]  # boundaries[p]: (#(p-1)-simplices, #p-simplices)


def clique_complex(g: Graph, max_dim: int) -> SimplicialSkeleton:
    """Enumerate cliques of size 1..max_dim+1 and their boundary matrices."""
    adj = adjacency_sets(g)
    by_dim: list[tuple[tuple[int, ...], ...]] = [
        tuple((v,) for v in range(g.n_vertices)),
    ]
    for p in range(1, max_dim + 1):
        prev = by_dim[p - 1]
        found = []
        for simplex in prev:
            # extend by vertices above the max id adjacent to all members
            common = adj[simplex[0]]
            for v in simplex[1:]:
                common = common & adj[v]
            for w in sorted(common):
                if w > simplex[-1]:
                    found.append(simplex + (w,))
        by_dim.append(tuple(sorted(found)))

    boundaries: list[np.ndarray] = [np.zeros((0, g.n_vertices))]  # B_0 = 0
    for p in range(1, max_dim + 1):
        faces = {s: i for i, s in enumerate(by_dim[p - 1])}
        b = np.zeros((len(by_dim[p - 1]), len(by_dim[p])))
        for col, simplex in enumerate(by_dim[p]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1:]
                b[faces[face], col] = (-1.0) ** i
        boundaries.append(b)
    return SimplicialSkeleton(tuple(by_dim), tuple(boundaries))


def hodge_laplacian(skeleton: SimplicialSkeleton, p: int) -> SymMatrix:
    """L_p = B_p^T B_p + B_{p+1} B_{p+1}^T over the skeleton's simplices."""
    n_p = len(skeleton.simplices[p]) if p < len(skeleton.simplices) else 0
    down = skeleton.boundaries[p] if p < len(skeleton.boundaries) else np.zeros((0, n_p))
    lap = down.T @ down
    if p + 1 < len(skeleton.boundaries):
        up = skeleton.boundaries[p + 1]
        lap = lap + up @ up.T
    return sym_matrix(lap)

"""Homomorphism counting of small patterns into a host graph.

Counts adjacency-preserving (not necessarily injective) vertex maps from
each catalog pattern into the host graph by dynamic programming over a
path decomposition of the pattern: vertices are placed one at a time in
a connected order chosen to minimize the active-boundary width, partial
counts are keyed by the images of boundary vertices, and vertices whose
pattern neighbours are all placed are summed out immediately. Counts are
exact (Python integers) and reported as failed on 64-bit overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from ..graph import Graph, adjacency_sets
from .patterns import PATTERN_CATALOG, Pattern

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class _Step:
    """Place one pattern vertex: constrain by `anchors` (positions of its
    already-placed neighbours in the current key), then keep `keep`
    positions of the extended key as the next boundary."""

    anchors: tuple[int, ...]
    keep: tuple[int, ...]


@dataclass(frozen=True)
class _Plan:
    pattern: Pattern
    steps: tuple[_Step, ...]
    width: int


def _plan_for_order(pattern: Pattern, order: tuple[int, ...]) -> _Plan | None:
    nbrs: dict[int, set[int]] = {v: set() for v in range(pattern.n_vertices)}
    for u, v in pattern.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    steps: list[_Step] = []
    boundary: list[int] = []
    placed: set[int] = set()
    width = 0
    for t, v in enumerate(order):
        placed_nbrs = nbrs[v] & placed
        if t > 0 and not placed_nbrs:
            return None  # disconnected prefix: unconstrained placement
        anchors = tuple(boundary.index(w) for w in sorted(placed_nbrs))
        placed.add(v)
        extended = boundary + [v]
        next_boundary = [w for w in extended if nbrs[w] - placed]
        keep = tuple(extended.index(w) for w in next_boundary)
        steps.append(_Step(anchors, keep))
        boundary = next_boundary
        width = max(width, len(extended))
    return _Plan(pattern, tuple(steps), width)


def _compile(pattern: Pattern) -> _Plan:
    best: _Plan | None = None
    for order in permutations(range(pattern.n_vertices)):
        plan = _plan_for_order(pattern, order)
        if plan is not None and (best is None or plan.width < best.width):
            best = plan
    assert best is not None  # catalog patterns are connected
    return best


_PLANS: tuple[_Plan, ...] = tuple(_compile(p) for p in PATTERN_CATALOG)


def count_homomorphisms(pattern_index: int, g: Graph) -> int:
    """Exact number of homomorphisms from catalog pattern `pattern_index`
    into `g`."""
    plan = _PLANS[pattern_index]
    n = g.n_vertices
    if n == 0:
        return 0
    adj = adjacency_sets(g)
    everything = frozenset(range(n))

    table: dict[tuple[int, ...], int] = {(): 1}
    for step in plan.steps:
        anchors = step.anchors
        keep = step.keep
        new_table: dict[tuple[int, ...], int] = {}
        for key, cnt in table.items():
            if anchors:
                candidates = adj[key[anchors[0]]]
                for a in anchors[1:]:
                    candidates = candidates & adj[key[a]]
            else:
                candidates = everything
            for x in candidates:
                extended = key + (x,)
                new_key = tuple(extended[i] for i in keep)
                new_table[new_key] = new_table.get(new_key, 0) + cnt
        table = new_table
        if not table:
            return 0
    return table.get((), 0)


def count_all_patterns(g: Graph) -> list[int]:
    """Homomorphism counts for every catalog pattern, in catalog order."""
    return [count_homomorphisms(i, g) for i in range(len(PATTERN_CATALOG))]


def overflows_int64(counts: list[int]) -> bool:
    return any(c > _INT64_MAX for c in counts)

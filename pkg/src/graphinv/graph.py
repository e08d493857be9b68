"""Graph data model, parsers, and traversal primitives.

Graphs are finite, undirected, without self-loops. Vertices are dense
0-based integers; edges are stored canonically as a sorted tuple of
``(u, v)`` pairs with ``u < v``. Instances are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

#: Sentinel for pairs in different connected components. Kept distinct
#: from any finite distance; never a large finite stand-in.
UNREACHABLE = -1

SPLIT_FILES = ("train.jsonl", "val.jsonl", "test.jsonl")


class GraphDataError(ValueError):
    """Malformed or inconsistent graph input."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with optional node/edge feature matrices.

    ``edges`` holds unordered pairs as sorted tuples, globally sorted;
    ``edge_features`` rows follow that canonical edge order.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    node_features: np.ndarray | None = None
    edge_features: np.ndarray | None = None
    id: str = ""
    label: object = None

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def make_graph(
    n_vertices: int,
    edges: Iterable[tuple[int, int]],
    node_features=None,
    edge_features=None,
    id: str = "",
    label: object = None,
) -> Graph:
    """Validate, canonicalize, and construct a :class:`Graph`.

    Rejects self-loops, out-of-range endpoints, and feature matrices
    whose row counts disagree with the vertex/edge counts. Duplicate
    edges are rejected when edge features are present (the row pairing
    would be ambiguous) and silently deduplicated otherwise.
    """
    if n_vertices < 0:
        raise GraphDataError(f"negative vertex count {n_vertices}")

    raw = [(int(u), int(v)) for u, v in edges]
    for u, v in raw:
        if u == v:
            raise GraphDataError(f"self-loop at vertex {u}")
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise GraphDataError(
                f"edge ({u},{v}) out of range for n_vertices={n_vertices}"
            )
    canon = [(u, v) if u < v else (v, u) for u, v in raw]

    if edge_features is not None:
        ef = np.asarray(edge_features, dtype=np.float64)
        if ef.ndim != 2 or ef.shape[0] != len(raw):
            raise GraphDataError(
                f"edge_features rows {np.asarray(ef).shape[0] if np.ndim(ef) else 0} "
                f"!= {len(raw)} edges"
            )
        if len(set(canon)) != len(canon):
            raise GraphDataError("duplicate edges with edge features present")
        order = sorted(range(len(canon)), key=lambda k: canon[k])
        edge_tuple = tuple(canon[k] for k in order)
        ef = _freeze(ef[order])
    else:
        edge_tuple = tuple(sorted(set(canon)))
        ef = None

    nf = None
    if node_features is not None:
        nf = np.asarray(node_features, dtype=np.float64)
        if nf.ndim != 2 or nf.shape[0] != n_vertices:
            raise GraphDataError(
                f"node_features rows {nf.shape[0] if nf.ndim else 0} "
                f"!= {n_vertices} vertices"
            )
        nf = _freeze(nf)

    return Graph(n_vertices, edge_tuple, nf, ef, id=id, label=label)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs shortest-path distances with UNREACHABLE sentinel entries."""

    dist: np.ndarray  # (n, n) int64

    @property
    def order(self) -> int:
        return self.dist.shape[0]

    def finite_mask(self) -> np.ndarray:
        return self.dist != UNREACHABLE


@dataclass(frozen=True)
class GraphDataset:
    """Ordered collection of graphs with unique ids."""

    graphs: tuple[Graph, ...]
    name: str = ""
    source_path: str = ""

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.graphs)


def _dataset(graphs: Iterable[Graph], name: str, source_path: str) -> GraphDataset:
    graphs = tuple(graphs)
    seen: set[str] = set()
    for g in graphs:
        if g.id in seen:
            raise GraphDataError(f"duplicate graph id {g.id!r} in dataset {name!r}")
        seen.add(g.id)
    return GraphDataset(graphs, name=name, source_path=source_path)


# ---------------------------------------------------------------------------
# Parsers


def parse_edge_list(text: str | bytes, id: str = "") -> Graph:
    """Parse an edge list: lines of ``u v`` with an optional ``n <count>`` header.

    Without the header, the vertex count is inferred as max id + 1, so
    isolated vertices survive only via the header.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    n_declared: int | None = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if n_declared is not None or edges:
                raise GraphDataError(f"line {lineno}: stray header {line!r}")
            try:
                n_declared = int(parts[1])
            except (IndexError, ValueError):
                raise GraphDataError(f"line {lineno}: malformed header {line!r}") from None
            continue
        try:
            u, v = (int(p) for p in parts)
        except ValueError:
            raise GraphDataError(f"line {lineno}: malformed edge {line!r}") from None
        if u == v:
            raise GraphDataError(f"line {lineno}: self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphDataError(f"line {lineno}: negative vertex id in {line!r}")
        edges.append((u, v))
        max_id = max(max_id, u, v)

    n = n_declared if n_declared is not None else max_id + 1
    if max_id >= n:
        raise GraphDataError(f"vertex id {max_id} exceeds declared count {n}")
    return make_graph(n, edges, id=id)


def graph_from_obj(obj: dict, default_id: str) -> Graph:
    gid = str(obj.get("id", default_id))
    try:
        n = int(obj["num_nodes"])
        edges = [(int(u), int(v)) for u, v in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphDataError(f"graph {gid!r}: malformed record ({exc})") from None
    try:
        return make_graph(
            n,
            edges,
            node_features=obj.get("node_features"),
            edge_features=obj.get("edge_features"),
            id=gid,
            label=obj.get("label"),
        )
    except GraphDataError as exc:
        raise GraphDataError(f"graph {gid!r}: {exc}") from None


def parse_jsonl_dataset(stream: IO | str | bytes, name: str = "", source_path: str = "") -> GraphDataset:
    """Parse a JSON-lines dataset, one graph object per line, preserving order."""
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        lines: Iterable[str] = stream.splitlines()
    else:
        lines = stream

    graphs = []
    for lineno, line in enumerate(lines, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GraphDataError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        graphs.append(graph_from_obj(obj, default_id=f"g{lineno - 1}"))
    return _dataset(graphs, name=name, source_path=source_path)


def load_jsonl(path: str | Path, name: str = "") -> GraphDataset:
    """Load a ``.jsonl`` dataset file."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        return parse_jsonl_dataset(fh, name=name or path.stem, source_path=str(path))


def load_dataset_dir(path: str | Path) -> dict[str, GraphDataset]:
    """Load the ``<name>/{train,val,test}.jsonl`` convention; absent splits are skipped."""
    path = Path(path)
    splits = {}
    for fname in SPLIT_FILES:
        fpath = path / fname
        if fpath.exists():
            split = fname.removesuffix(".jsonl")
            splits[split] = load_jsonl(fpath, name=f"{path.name}/{split}")
    if not splits:
        raise GraphDataError(f"no {'/'.join(SPLIT_FILES)} found under {path}")
    return splits


def graph_to_obj(g: Graph) -> dict:
    """Inverse of the JSONL graph schema (used by converters and tests)."""
    obj: dict = {"id": g.id, "num_nodes": g.n_vertices, "edges": [list(e) for e in g.edges]}
    if g.node_features is not None:
        obj["node_features"] = g.node_features.tolist()
    if g.edge_features is not None:
        obj["edge_features"] = g.edge_features.tolist()
    if g.label is not None:
        obj["label"] = g.label
    return obj


# ---------------------------------------------------------------------------
# Traversal primitives (cached per Graph instance; results are read-only)


@lru_cache(maxsize=64)
def adjacency_sets(g: Graph) -> tuple[frozenset[int], ...]:
    """Neighbour sets per vertex."""
    nbrs: list[set[int]] = [set() for _ in range(g.n_vertices)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return tuple(frozenset(s) for s in nbrs)


@lru_cache(maxsize=64)
def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency matrix (float64)."""
    a = np.zeros((g.n_vertices, g.n_vertices))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return _freeze(a)


@lru_cache(maxsize=64)
def degree_vector(g: Graph) -> np.ndarray:
    """Vertex degrees (int64); sums to 2 * n_edges."""
    deg = np.zeros(g.n_vertices, dtype=np.int64)
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return _freeze(deg)


def incidence_matrix(g: Graph) -> np.ndarray:
    """Unoriented vertex-edge incidence matrix (n_V x n_E, 0/1)."""
    b = np.zeros((g.n_vertices, g.n_edges))
    for e, (u, v) in enumerate(g.edges):
        b[u, e] = 1.0
        b[v, e] = 1.0
    return b


@lru_cache(maxsize=64)
def bfs_all_pairs(g: Graph) -> DistanceMatrix:
    """Exact unweighted all-pairs shortest paths via BFS from every vertex."""
    n = g.n_vertices
    nbrs = [sorted(s) for s in adjacency_sets(g)]
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for src in range(n):
        row = dist[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = row[u]
            for w in nbrs[u]:
                if row[w] == UNREACHABLE:
                    row[w] = du + 1
                    queue.append(w)
    return DistanceMatrix(_freeze(dist))


@lru_cache(maxsize=64)
def connected_components(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Component count and a per-vertex component label (labels by first-seen order)."""
    n = g.n_vertices
    nbrs = adjacency_sets(g)
    labels = [-1] * n
    count = 0
    for start in range(n):
        if labels[start] != -1:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if labels[w] == -1:
                    labels[w] = count
                    queue.append(w)
        count += 1
    return count, tuple(labels)


def relabel(g: Graph, perm: list[int] | tuple[int, ...]) -> Graph:
    """Apply a vertex permutation: vertex i becomes perm[i]."""
    if sorted(perm) != list(range(g.n_vertices)):
        raise GraphDataError("perm is not a permutation of the vertex set")
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    nf = g.node_features
    if nf is not None:
        out = np.empty_like(nf)
        out[list(perm)] = nf
        nf = out
    ef = g.edge_features
    if ef is not None:
        canon = [tuple(sorted(e)) for e in edges]
        order = sorted(range(len(canon)), key=lambda k: canon[k])
        ef = ef[order]
        edges = [edges[k] for k in order]
    return make_graph(g.n_vertices, edges, node_features=nf, edge_features=ef, id=g.id, label=g.label)

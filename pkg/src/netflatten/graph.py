"""Undirected simple graphs with an activity mask.

Node ids are dense integers ``0..n-1``. Isolating a node cuts every link
incident to it and flips its ``active`` flag, but the id stays valid, so
rankings computed on the intact graph remain aligned with later states.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

logger = logging.getLogger(__name__)

#: Distance marker for nodes that cannot be reached from the source.
UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for invalid graph input or an operation on the wrong node state."""


class Graph:
    """Undirected simple graph with per-node activity flags.

    Parameters
    ----------
    n : int
        Number of nodes.
    adjacency : sequence of sequences of int
        Neighbour lists. They are sorted and frozen on construction; the caller
        is responsible for symmetry (use :func:`from_edge_list` for raw input).
    active : array-like of bool, optional
        Activity mask, all ``True`` by default.
    """

    __slots__ = ("n", "_adj", "active", "dropped_pairs", "_csr")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], active=None):
        if n <= 0:
            raise GraphError("empty graph")
        if len(adjacency) != n:
            raise GraphError(f"adjacency has {len(adjacency)} rows, expected {n}")
        self.n = int(n)
        self._adj = tuple(tuple(sorted(nb)) for nb in adjacency)
        if active is None:
            active = np.ones(n, dtype=bool)
        self.active = np.array(active, dtype=bool)
        self.active.setflags(write=False)
        self.dropped_pairs = 0
        self._csr = None

    @classmethod
    def _presorted(cls, n: int, adjacency: tuple, active: np.ndarray) -> "Graph":
        g = cls.__new__(cls)
        g.n = n
        g._adj = adjacency
        g.active = active
        g.active.setflags(write=False)
        g.dropped_pairs = 0
        g._csr = None
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.n_edges}, active={self.n_active})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self._adj == other._adj
            and bool(np.array_equal(self.active, other.active))
        )

    def __hash__(self):
        return hash((self.n, self._adj, self.active.tobytes()))

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(nb) for nb in self._adj), dtype=np.int64, count=self.n)

    @property
    def n_edges(self) -> int:
        return sum(len(nb) for nb in self._adj) // 2

    @property
    def n_active(self) -> int:
        return int(self.active.sum())

    def active_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.active)

    def has_edge(self, i: int, j: int) -> bool:
        nb = self._adj[i]
        k = bisect_left(nb, j)
        return k < len(nb) and nb[k] == j

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs with ``i < j``, in lexicographic order."""
        return [(i, j) for i, nb in enumerate(self._adj) for j in nb if i < j]

    def to_csr(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix (cached)."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(nb) for nb in self._adj])
            indices = np.fromiter(
                (j for nb in self._adj for j in nb), dtype=np.int64, count=int(indptr[-1])
            )
            data = np.ones(len(indices), dtype=np.float64)
            self._csr = sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.n))
        return self._csr


@dataclass(frozen=True)
class DistanceVector:
    """Hop distances from ``source``; ``UNREACHABLE`` marks unreachable nodes."""

    source: int
    dist: np.ndarray

    def finite(self) -> np.ndarray:
        return self.dist[self.dist != UNREACHABLE]


def from_edge_list(pairs: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
    """Build a simple undirected graph from node pairs.

    Duplicate pairs (in either orientation) and self-loops are dropped; the
    number dropped is stored on ``graph.dropped_pairs``. ``n`` defaults to the
    largest id plus one.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    if not pairs:
        raise GraphError("empty graph")
    if min(min(p) for p in pairs) < 0:
        raise GraphError("node ids must be non-negative")
    n_inferred = max(max(p) for p in pairs) + 1
    if n is None:
        n = n_inferred
    elif n < n_inferred:
        raise GraphError(f"node id {n_inferred - 1} out of range for n={n}")

    adj: list[set[int]] = [set() for _ in range(n)]
    dropped = 0
    for a, b in pairs:
        if a == b or b in adj[a]:
            dropped += 1
            continue
        adj[a].add(b)
        adj[b].add(a)
    if dropped:
        logger.info("dropped %d duplicate or self-loop pairs", dropped)
    g = Graph(n, adj)
    g.dropped_pairs = dropped
    return g


def read_edge_list(path: str | Path) -> Graph:
    """Read a whitespace-separated edge list; ``#`` lines and blank lines are skipped."""
    path = Path(path)
    pairs = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"{path}:{lineno}: expected two node ids, got {line!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise GraphError(f"{path}:{lineno}: non-integer node id in {line!r}") from None
    return from_edge_list(pairs)


def write_edge_list(g: Graph, path: str | Path, header: str | None = None) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for i, j in g.edges():
            fh.write(f"{i} {j}\n")


def _require_active(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise GraphError(f"node {i} out of range for n={g.n}")
    if not g.active[i]:
        raise GraphError(f"node {i} is inactive")


def bfs_distances(g: Graph, source: int) -> DistanceVector:
    """Exact hop counts from ``source`` over the active subgraph."""
    _require_active(g, source)
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    adj = g.adjacency
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] == UNREACHABLE:
                dist[w] = dv
                queue.append(w)
    return DistanceVector(source, dist)


def distance_matrix(g: Graph, sources: Sequence[int] | None = None) -> np.ndarray:
    """Hop distances from each of ``sources`` (default: every active node) to all nodes.

    Returns an ``(len(sources), n)`` integer array with ``UNREACHABLE`` for
    unreachable or inactive targets. Backed by the compiled BFS in
    ``scipy.sparse.csgraph``.
    """
    if sources is None:
        sources = g.active_nodes()
    sources = np.asarray(sources, dtype=np.int64)
    for s in sources:
        _require_active(g, int(s))
    if len(sources) == 0:
        return np.empty((0, g.n), dtype=np.int64)
    d = csgraph.shortest_path(g.to_csr(), directed=False, unweighted=True, indices=sources)
    d = np.atleast_2d(d)
    out = np.where(np.isinf(d), UNREACHABLE, d).astype(np.int64)
    out[:, ~g.active] = UNREACHABLE
    return out


def isolate_node(g: Graph, i: int) -> Graph:
    """Return a copy of ``g`` with every link of ``i`` cut and ``i`` marked inactive."""
    if not 0 <= i < g.n:
        raise GraphError(f"node {i} out of range for n={g.n}")
    if not g.active[i]:
        raise GraphError(f"double isolation of node {i}")
    return isolate_nodes(g, [i])


def isolate_nodes(g: Graph, nodes: Iterable[int]) -> Graph:
    nodes = set(int(i) for i in nodes)
    for i in nodes:
        if not g.active[i]:
            raise GraphError(f"double isolation of node {i}")
    adj = list(g.adjacency)
    touched = set()
    for i in nodes:
        touched.update(adj[i])
    for j in touched - nodes:
        adj[j] = tuple(w for w in adj[j] if w not in nodes)
    for i in nodes:
        adj[i] = ()
    active = g.active.copy()
    active[list(nodes)] = False
    return Graph._presorted(g.n, tuple(adj), active)


def connected_components(g: Graph) -> list[set[int]]:
    """Components of the active subgraph, ordered by their smallest node id."""
    active = g.active_nodes()
    if len(active) == 0:
        return []
    _, labels = csgraph.connected_components(g.to_csr(), directed=False)
    comps: dict[int, set[int]] = {}
    for v in active:
        comps.setdefault(int(labels[v]), set()).add(int(v))
    return sorted(comps.values(), key=min)


def is_connected(g: Graph) -> bool:
    if g.n_active == 0:
        raise GraphError("no active nodes")
    seen = np.zeros(g.n, dtype=bool)
    start = int(g.active_nodes()[0])
    seen[start] = True
    stack = [start]
    count = 1
    adj = g.adjacency
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n_active


def diameter(g: Graph) -> int:
    if not is_connected(g):
        raise GraphError("diameter undefined: graph is disconnected")
    return int(distance_matrix(g).max())

"""Local and global clustering coefficients.

Two global coefficients are reported: ``gcc1`` averages the local
coefficient over active nodes, ``gcc2`` is the transitivity
``3 * triangles / connected_triples``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, _require_active


@dataclass(frozen=True)
class ClusteringReport:
    local: np.ndarray
    gcc1: float
    gcc2: float
    triads: int
    triplets: int

    def to_dict(self) -> dict:
        return {
            "gcc1": self.gcc1,
            "gcc2": self.gcc2,
            "triads": self.triads,
            "triplets": self.triplets,
        }


def node_triangles(g: Graph) -> np.ndarray:
    """Number of links among each node's neighbours (triangles through the node)."""
    adj = [set(nb) for nb in g.adjacency]
    tri = np.zeros(g.n, dtype=np.int64)
    for i, nb in enumerate(g.adjacency):
        si = adj[i]
        for j in nb:
            if j <= i:
                continue
            sj = adj[j]
            small, large = (si, sj) if len(si) <= len(sj) else (sj, si)
            for k in small:
                if k > j and k in large:
                    tri[i] += 1
                    tri[j] += 1
                    tri[k] += 1
    return tri


def _local_from(k: np.ndarray, tri: np.ndarray) -> np.ndarray:
    pairs = k * (k - 1) / 2.0
    out = np.zeros(len(k), dtype=float)
    ok = pairs > 0
    out[ok] = tri[ok] / pairs[ok]
    return out


def local_clustering(g: Graph, i: int) -> float:
    """Fraction of realised links among the neighbours of ``i`` (0 when degree <= 1)."""
    _require_active(g, i)
    nb = g.neighbors(i)
    k = len(nb)
    if k < 2:
        return 0.0
    links = sum(1 for a in range(k) for b in range(a + 1, k) if g.has_edge(nb[a], nb[b]))
    return 2.0 * links / (k * (k - 1))


def clustering_report(g: Graph) -> ClusteringReport:
    if g.n_active == 0:
        raise GraphError("no active nodes")
    k = g.degrees()
    tri = node_triangles(g)
    local = _local_from(k, tri)
    triplets = int((k * (k - 1) // 2).sum())
    triads = int(tri.sum() // 3)
    gcc1 = float(local[g.active].mean())
    gcc2 = 3.0 * triads / triplets if triplets else 0.0
    return ClusteringReport(local, gcc1, gcc2, triads, triplets)


def gcc1(g: Graph) -> float:
    return clustering_report(g).gcc1


def gcc2(g: Graph) -> float:
    """Transitivity. Returns 0.0 when the graph has no connected triples
    (check ``clustering_report(g).triplets`` to tell that case apart)."""
    return clustering_report(g).gcc2

"""Brute-force reference implementations used only by the tests.

None of these share code with the package: they work on plain edge lists
and enumerate things the slow way.
"""

from __future__ import annotations

import itertools
import math
import random

INF = math.inf


def adjacency_sets(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def floyd_warshall(n, edges):
    d = [[INF] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0
    for a, b in edges:
        d[a][b] = d[b][a] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def all_shortest_paths(adj, s, t, dist):
    """Every shortest s-t path, found by depth-first extension along decreasing distance."""
    if dist[s][t] == INF:
        return []
    paths = []

    def walk(path):
        v = path[-1]
        if v == t:
            paths.append(list(path))
            return
        for w in adj[v]:
            if dist[w][t] == dist[v][t] - 1:
                path.append(w)
                walk(path)
                path.pop()

    walk([s])
    return paths


def betweenness(n, edges):
    adj = adjacency_sets(n, edges)
    dist = floyd_warshall(n, edges)
    bc = [0.0] * n
    for s, t in itertools.combinations(range(n), 2):
        paths = all_shortest_paths(adj, s, t, dist)
        if not paths:
            continue
        for p in paths:
            for v in p[1:-1]:
                bc[v] += 1.0 / len(paths)
    return bc


def triangles(n, edges):
    adj = adjacency_sets(n, edges)
    return sum(
        1 for a, b, c in itertools.combinations(range(n), 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )


def expected_force(n, edges, seed):
    """Enumerate ordered two-event transmission sequences, keep one cluster per
    distinct pair of transmission links, score by links leaving the cluster."""
    adj = adjacency_sets(n, edges)
    trees = {}
    for a in adj[seed]:
        infected = {seed, a}
        for src in (seed, a):
            for b in adj[src]:
                if b in infected:
                    continue
                links = frozenset([frozenset((seed, a)), frozenset((src, b))])
                trees[links] = frozenset(infected | {b})
    forces = []
    for cluster in trees.values():
        forces.append(sum(1 for v in cluster for w in adj[v] if w not in cluster))
    total = sum(forces)
    if total == 0:
        return 0.0
    return -sum(f / total * math.log(f / total) for f in forces if f > 0)


def shell_counts(n, edges, source, active=None):
    dist = floyd_warshall(n, edges)
    active = range(n) if active is None else active
    counts = {}
    for j in active:
        d = dist[source][j]
        if d != INF:
            counts[d] = counts.get(d, 0) + 1
    return counts


def mean_curve(n, edges, sources, active=None):
    dist = floyd_warshall(n, edges)
    active = list(range(n)) if active is None else list(active)
    acc = {}
    for s in sources:
        for j in active:
            d = dist[s][j]
            if d != INF:
                acc[d] = acc.get(d, 0.0) + 1.0
    return {d: c / len(sources) for d, c in acc.items()}


def random_connected(n, extra, seed):
    """Random spanning tree plus ``extra`` random chords, using the stdlib RNG."""
    rnd = random.Random(seed)
    order = list(range(n))
    rnd.shuffle(order)
    edges = set()
    for i in range(1, n):
        a, b = order[i], order[rnd.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    tries = 0
    while len(edges) < n - 1 + extra and tries < 10 * (extra + 1):
        a, b = rnd.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
        tries += 1
    return sorted(edges)

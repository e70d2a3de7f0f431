"""Growth models for scale-free graphs.

Both models start from a complete seed graph and add one node per step with
``m`` links. In the Barabási-Albert (BA) model every link is a preferential
attachment (PA) draw. In the Holme-Kim (HK) model only ``m0_pa`` links are PA
draws; the remaining ``m - m0_pa`` links go to neighbours of those PA targets,
each one closing a triangle.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph, GraphError


@dataclass(frozen=True)
class GrowthSpec:
    """Parameters for one grown graph.

    ``m0_pa`` is the number of PA links per new node; ``m0_pa == m`` (the
    default) is the pure BA model.
    """

    n: int
    m: int
    m0_pa: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.m0_pa is None:
            object.__setattr__(self, "m0_pa", self.m)
        if self.m < 1:
            raise GraphError(f"m must be >= 1, got {self.m}")
        if not 1 <= self.m0_pa <= self.m:
            raise GraphError(f"m0_pa must be in [1, m={self.m}], got {self.m0_pa}")
        if self.n <= self.m:
            raise GraphError(f"n={self.n} must exceed m={self.m}")

    @property
    def triad_links(self) -> int:
        return self.m - self.m0_pa

    @property
    def seed_size(self) -> int:
        return max(self.m, 2) + 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["triad_links"] = self.triad_links
        d["seed_graph"] = f"K{self.seed_size}"
        return d


def _complete(k: int) -> list[list[int]]:
    return [[j for j in range(k) if j != i] for i in range(k)]


def _grow(spec: GrowthSpec) -> Graph:
    rng = np.random.default_rng(spec.seed)
    n0 = min(spec.seed_size, spec.n)
    adj = _complete(n0) + [[] for _ in range(spec.n - n0)]
    # every node appears once per incident link, so a uniform pick is degree-proportional
    stubs = [i for i in range(n0) for _ in range(n0 - 1)]

    for j in range(n0, spec.n):
        n_stubs = len(stubs)
        linked: set[int] = set()

        def pa_draw() -> int:
            while True:
                t = stubs[int(rng.integers(n_stubs))]
                if t not in linked:
                    return t

        parents = []
        for _ in range(spec.m0_pa):
            t = pa_draw()
            linked.add(t)
            parents.append(t)
        new_links = list(parents)

        for _ in range(spec.triad_links):
            parent = parents[int(rng.integers(len(parents)))]
            eligible = [w for w in adj[parent] if w not in linked]
            if eligible:
                t = eligible[int(rng.integers(len(eligible)))]
            else:
                t = pa_draw()
            linked.add(t)
            new_links.append(t)

        for t in new_links:
            adj[t].append(j)
            adj[j].append(t)
            stubs.append(t)
            stubs.append(j)

    return Graph(spec.n, adj)


def generate_ba(spec: GrowthSpec) -> Graph:
    """Barabási-Albert growth; ``spec.m0_pa`` must equal ``spec.m``."""
    if spec.m0_pa != spec.m:
        raise GraphError("generate_ba requires m0_pa == m; use generate_hk for triad links")
    return _grow(spec)


def generate_hk(spec: GrowthSpec) -> Graph:
    """Holme-Kim growth with ``m - m0_pa`` triad-formation links per step."""
    if spec.m < 2 or spec.m0_pa >= spec.m:
        raise GraphError("generate_hk requires m >= 2 and 1 <= m0_pa < m")
    return _grow(spec)


def generate(model: str, n: int, m: int, m0_pa: int | None = None, seed: int = 0) -> Graph:
    """Dispatch on ``model`` in ``{"ba", "hk"}``."""
    if model == "ba":
        return generate_ba(GrowthSpec(n, m, m, seed))
    if model == "hk":
        return generate_hk(GrowthSpec(n, m, m0_pa if m0_pa is not None else 1, seed))
    raise GraphError(f"unknown model {model!r}")

"""Targeted isolation experiments.

Nodes are isolated in descending centrality order. A candidate whose
isolation would split the active subgraph is skipped for good and the next
ranked node takes its place, so the network always stays one component.

Curves before and after are always averaged over the same sources, drawn
from nodes that stay active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import centrality
from .curve import (
    DegenerateSampleError,
    DistanceDistribution,
    GammaParams,
    curve_from_sources,
    fit_gamma,
    normalized_peak,
    sample_sources,
)
from .graph import Graph, GraphError, isolate_node, is_connected


class ThresholdUnreachable(RuntimeError):
    """Raised by :func:`scenario2`; ``report`` holds the state at the isolation cap."""

    def __init__(self, message: str, report: "FlatteningReport"):
        super().__init__(message)
        self.report = report


@dataclass
class IsolationPlan:
    measure: str
    targets: list[int] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)
    fraction_or_threshold: float = 0.0
    scenario: str = "fraction"

    def as_dict(self) -> dict:
        return {
            "measure": self.measure,
            "scenario": self.scenario,
            "value": self.fraction_or_threshold,
            "targets": list(self.targets),
            "skipped": list(self.skipped),
        }


@dataclass
class FlatteningReport:
    plan: IsolationPlan
    curve_before: DistanceDistribution
    curve_after: DistanceDistribution
    gamma_before: GammaParams | None
    gamma_after: GammaParams | None
    peak_drop: float
    mean_distance_change: float
    n_sources: int

    @property
    def isolated_count(self) -> int:
        return len(self.plan.targets)

    @property
    def peak_reduction(self) -> float:
        return 1.0 - self.peak_drop

    def as_dict(self) -> dict:
        return {
            "plan": self.plan.as_dict(),
            "isolated_count": self.isolated_count,
            "n_sources": self.n_sources,
            "curve_before": self.curve_before.as_dict(),
            "curve_after": self.curve_after.as_dict(),
            "gamma_before": self.gamma_before.as_dict() if self.gamma_before else None,
            "gamma_after": self.gamma_after.as_dict() if self.gamma_after else None,
            "peak_drop": self.peak_drop,
            "mean_distance_change": self.mean_distance_change,
        }


def _try_fit(dist: DistanceDistribution) -> GammaParams | None:
    try:
        return fit_gamma(dist)
    except DegenerateSampleError:
        return None


def iter_isolations(g: Graph, measure: str, *, recompute: bool = False,
                    kappa: float = centrality.DEFAULT_KAPPA,
                    damping: float = centrality.DEFAULT_DAMPING,
                    ) -> Iterator[tuple[int, Graph, list[int]]]:
    """Yield ``(node, graph_after, skipped_so_far)`` for each accepted isolation.

    With ``recompute`` the ranking is refreshed on the current graph after
    every isolation; otherwise the intact-graph ranking is used throughout.
    """
    order = centrality.ranking(centrality.compute(g, measure, kappa, damping))
    pos = 0
    skipped: list[int] = []
    passed: set[int] = set()
    cur = g
    while True:
        found = None
        while pos < len(order):
            c = int(order[pos])
            pos += 1
            if c in passed or not cur.active[c]:
                continue
            trial = isolate_node(cur, c)
            if is_connected(trial):
                found = trial
                break
            skipped.append(c)
            passed.add(c)
        if found is None:
            return
        cur = found
        yield c, cur, list(skipped)
        if recompute:
            order = centrality.ranking(centrality.compute(cur, measure, kappa, damping))
            pos = 0


def _report(plan, g_before, g_after, sources, before=None) -> FlatteningReport:
    if before is None:
        before = curve_from_sources(g_before, sources)
    after = curve_from_sources(g_after, sources)
    return FlatteningReport(
        plan=plan,
        curve_before=before,
        curve_after=after,
        gamma_before=_try_fit(before),
        gamma_after=_try_fit(after),
        peak_drop=normalized_peak(after) / normalized_peak(before),
        mean_distance_change=after.mean_distance() - before.mean_distance(),
        n_sources=len(sources),
    )


def _check_start(g: Graph, value: float, upper_inclusive: bool):
    ok = 0 < value <= 1 if upper_inclusive else 0 < value < 1
    if not ok:
        raise GraphError(f"value must be in (0, 1{']' if upper_inclusive else ')'}, got {value}")
    if not is_connected(g):
        raise GraphError("isolation experiments need a connected starting graph")


def scenario1(g: Graph, measure: str, fraction: float, trials: int | None,
              rng: np.random.Generator | int | None = None, *, recompute: bool = False,
              kappa: float = centrality.DEFAULT_KAPPA,
              damping: float = centrality.DEFAULT_DAMPING) -> FlatteningReport:
    """Isolate the top ``floor(fraction * n_active)`` nodes and compare curves."""
    _check_start(g, fraction, upper_inclusive=False)
    rng = np.random.default_rng(rng)
    count = math.floor(fraction * g.n_active)
    if count >= g.n_active - 1:
        raise GraphError("isolating that many nodes would empty graph")
    plan = IsolationPlan(str(centrality.Measure(measure).value), fraction_or_threshold=fraction,
                         scenario="fraction")
    cur = g
    if count > 0:
        for node, cur, skipped in iter_isolations(g, measure, recompute=recompute,
                                                  kappa=kappa, damping=damping):
            plan.targets.append(node)
            plan.skipped = skipped
            if len(plan.targets) == count:
                break
        else:
            raise GraphError(
                f"only {len(plan.targets)} of {count} nodes can be isolated without "
                "disconnecting the network"
            )
    sources = sample_sources(np.flatnonzero(g.active & cur.active), trials, rng)
    return _report(plan, g, cur, sources)


def scenario2(g: Graph, measure: str, threshold: float, trials: int | None,
              rng: np.random.Generator | int | None = None, *, recompute: bool = False,
              max_isolations: int | None = None,
              kappa: float = centrality.DEFAULT_KAPPA,
              damping: float = centrality.DEFAULT_DAMPING) -> FlatteningReport:
    """Isolate nodes one at a time until the curve peak falls to ``threshold``.

    The peak is measured relative to the intact curve over the same sources,
    so ``threshold=0.5`` means "halve the tallest shell" (both shells taken as
    fractions of the active nodes). Sources are the first ``trials`` nodes of a
    fixed random order that are still active, so the source set changes only
    when one of them is isolated. Raises :class:`ThresholdUnreachable` after
    ``max_isolations`` (default ``floor(n / 2)``) isolations.
    """
    _check_start(g, threshold, upper_inclusive=True)
    rng = np.random.default_rng(rng)
    cap = g.n_active // 2 if max_isolations is None else max_isolations
    order = rng.permutation(g.active_nodes())
    plan = IsolationPlan(str(centrality.Measure(measure).value), fraction_or_threshold=threshold,
                         scenario="threshold")
    before_cache: dict[tuple, DistanceDistribution] = {}

    def evaluate(cur: Graph) -> FlatteningReport:
        alive = order[cur.active[order]]
        sources = alive if trials is None else alive[:trials]
        key = tuple(sources.tolist())
        if key not in before_cache:
            before_cache.clear()
            before_cache[key] = curve_from_sources(g, sources)
        return _report(plan, g, cur, sources, before_cache[key])

    report = evaluate(g)
    if report.peak_drop <= threshold:
        return report
    for node, cur, skipped in iter_isolations(g, measure, recompute=recompute,
                                              kappa=kappa, damping=damping):
        plan.targets.append(node)
        plan.skipped = skipped
        report = evaluate(cur)
        if report.peak_drop <= threshold:
            return report
        if len(plan.targets) >= cap:
            break
    raise ThresholdUnreachable(
        f"threshold unreachable: peak ratio {report.peak_drop:.4f} > {threshold} after "
        f"{len(plan.targets)} isolations",
        report,
    )

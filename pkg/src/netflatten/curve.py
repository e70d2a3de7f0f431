"""Infection curves and their Gamma summaries.

An infection curve is the histogram of hop distances from a source: the
shell at distance ``d`` holds the nodes reached after ``d`` transmission
steps. Averaged curves keep real-valued shell sizes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .graph import UNREACHABLE, Graph, GraphError, bfs_distances, distance_matrix


class DegenerateSampleError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceDistribution:
    """Shell sizes indexed by distance.

    ``counts[d]`` is the (possibly averaged) number of nodes at distance ``d``;
    ``n_active`` is the active node count used for the fraction form.
    """

    counts: np.ndarray
    n_active: int
    n_unreachable: float = 0.0
    source_info: str = ""

    @property
    def n_reachable(self) -> float:
        return float(self.counts.sum())

    @property
    def max_distance(self) -> int:
        return len(self.counts) - 1

    def fraction(self) -> np.ndarray:
        return self.counts / self.n_active

    def mean_distance(self) -> float:
        """Mean distance to the reachable nodes other than the source."""
        d = np.arange(len(self.counts))
        w = self.counts[1:]
        return float((d[1:] * w).sum() / w.sum()) if w.sum() > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "source": self.source_info,
            "n_active": self.n_active,
            "n_unreachable": self.n_unreachable,
            "counts": [float(c) for c in self.counts],
            "fraction": [float(f) for f in self.fraction()],
        }

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["distance", "count", "fraction"])
        for d, (c, f) in enumerate(zip(self.counts, self.fraction())):
            writer.writerow([d, repr(float(c)), repr(float(f))])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text


@dataclass(frozen=True)
class GammaParams:
    k: float
    theta: float

    def __post_init__(self):
        for name in ("k", "theta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"gamma {name} must be positive and finite, got {v}")

    @property
    def mean(self) -> float:
        return self.k * self.theta

    def as_dict(self) -> dict:
        return {"k": self.k, "theta": self.theta}


def read_curve_csv(path: str | Path) -> DistanceDistribution:
    """Read a ``distance,count[,fraction]`` CSV back into a distribution."""
    rows = {}
    with Path(path).open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"distance", "count"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected a header with 'distance' and 'count' columns")
        for row in reader:
            rows[int(row["distance"])] = float(row["count"])
    if not rows:
        raise ValueError(f"{path}: no rows")
    counts = np.zeros(max(rows) + 1)
    for d, c in rows.items():
        counts[d] = c
    n = int(round(counts.sum()))
    return DistanceDistribution(counts, max(n, 1), source_info=str(path))


def distance_distribution(g: Graph, source: int) -> DistanceDistribution:
    dv = bfs_distances(g, source)
    reach = dv.finite()
    unreachable = int((dv.dist[g.active] == UNREACHABLE).sum())
    return DistanceDistribution(
        np.bincount(reach).astype(float), g.n_active, unreachable, f"source {source}"
    )


def shell_histogram(D: np.ndarray, active: np.ndarray) -> tuple[np.ndarray, float]:
    """Mean shell sizes and mean unreachable count over the rows of a distance matrix."""
    D = D[:, active]
    finite = D[D != UNREACHABLE]
    hist = np.bincount(finite).astype(float) if finite.size else np.zeros(1)
    return hist / D.shape[0], float((D == UNREACHABLE).sum()) / D.shape[0]


def curve_from_sources(g: Graph, sources: Sequence[int], label: str = "") -> DistanceDistribution:
    """Mean shell sizes over the given sources."""
    sources = np.asarray(sources, dtype=np.int64)
    if len(sources) == 0:
        raise GraphError("no sources")
    D = distance_matrix(g, sources)
    counts, unreachable = shell_histogram(D, g.active)
    label = label or f"averaged over {len(sources)} sources"
    return DistanceDistribution(counts, g.n_active, unreachable, label)


def sample_sources(candidates: np.ndarray, trials: int | None, rng: np.random.Generator) -> np.ndarray:
    """``trials`` distinct sources drawn uniformly; every candidate when ``trials`` is
    ``None`` or at least the number of candidates (sorted in that case)."""
    candidates = np.asarray(candidates)
    if trials is None or trials >= len(candidates):
        return np.sort(candidates)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    return rng.choice(candidates, size=trials, replace=False)


def averaged_curve(g: Graph, trials: int | None, rng: np.random.Generator | int | None = None) -> DistanceDistribution:
    """Infection curve averaged over ``trials`` random active sources.

    ``trials=None`` (or ``trials >= n_active``) uses every active node once and
    is deterministic.
    """
    rng = np.random.default_rng(rng)
    sources = sample_sources(g.active_nodes(), trials, rng)
    if len(sources) == g.n_active:
        return curve_from_sources(g, sources, f"exhaustive over {len(sources)} sources")
    return curve_from_sources(g, sources, f"averaged over {len(sources)} trials")


def gamma_pdf(x: float, p: GammaParams) -> float:
    if x < 0:
        raise ValueError(f"gamma pdf needs x >= 0, got {x}")
    if x == 0:
        if p.k > 1:
            return 0.0
        if p.k == 1:
            return 1.0 / p.theta
        raise ValueError("pdf pole: x=0 with shape k < 1")
    logf = (p.k - 1) * math.log(x) - x / p.theta - math.lgamma(p.k) - p.k * math.log(p.theta)
    return math.exp(logf)


def fit_gamma_moments(values, weights=None) -> GammaParams:
    """Method-of-moments Gamma fit with the population (biased) variance."""
    values = np.asarray(values, dtype=float)
    weights = np.ones_like(values) if weights is None else np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0:
        raise DegenerateSampleError("degenerate sample: no weight")
    mean = float((values * weights).sum() / total)
    var = float((weights * (values - mean) ** 2).sum() / total)
    if var <= 0 or mean <= 0:
        raise DegenerateSampleError("degenerate sample: zero variance")
    return GammaParams(mean * mean / var, var / mean)


def fit_gamma(dist: DistanceDistribution) -> GammaParams:
    """Fit shape and scale to the shells at distance >= 1 (the source shell is dropped)."""
    w = np.asarray(dist.counts[1:], dtype=float)
    d = np.arange(1, len(dist.counts), dtype=float)
    if np.count_nonzero(w > 0) < 2:
        raise DegenerateSampleError("degenerate sample: fewer than two distinct positive distances")
    return fit_gamma_moments(d, w)


def curve_peak(dist: DistanceDistribution) -> tuple[int, float]:
    """Distance of the tallest shell (smallest on ties) and its size."""
    if len(dist.counts) == 0:
        raise ValueError("empty distribution")
    d = int(np.argmax(dist.counts))
    return d, float(dist.counts[d])


def normalized_peak(dist: DistanceDistribution) -> float:
    """Tallest shell as a fraction of the active nodes."""
    return curve_peak(dist)[1] / dist.n_active

"""Monte-Carlo experiment orchestration and report persistence."""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import centrality
from .clustering import clustering_report
from .curve import (
    DegenerateSampleError,
    DistanceDistribution,
    fit_gamma,
    normalized_peak,
    sample_sources,
    shell_histogram,
)
from .generators import generate
from .graph import Graph, distance_matrix, is_connected, read_edge_list
from .isolation import ThresholdUnreachable, scenario1, scenario2

logger = logging.getLogger(__name__)

WORKERS_ENV = "NETFLATTEN_WORKERS"

CSV_COLUMNS = (
    "trial", "seed", "gcc1", "gcc2", "diameter",
    "k_before", "theta_before", "k_after", "theta_after",
    "peak_drop", "isolated_count", "measure",
)

NUMERIC_COLUMNS = (
    "gcc1", "gcc2", "diameter", "k_before", "theta_before", "k_after", "theta_after",
    "peak_drop", "isolated_count", "peak_before", "peak_after", "mean_distance_before",
    "mean_distance_after",
)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    model: str = "hk"
    n: int = 1000
    m: int = 4
    m0_pa: int | None = 1
    path: str | None = None
    measures: list[str] = field(default_factory=lambda: ["degree"])
    scenario: str = "none"
    value: float = 0.05
    mc_trials: int = 20
    source_trials: int | None = None
    master_seed: int = 0
    recompute: bool = False
    kappa: float = centrality.DEFAULT_KAPPA
    damping: float = centrality.DEFAULT_DAMPING

    def __post_init__(self):
        if self.model not in ("ba", "hk", "file"):
            raise ConfigError(f"model must be ba, hk or file, got {self.model!r}")
        if self.model == "file" and not self.path:
            raise ConfigError("model 'file' needs a path")
        if self.model == "ba":
            self.m0_pa = self.m
        if self.scenario not in ("none", "fraction", "threshold"):
            raise ConfigError(f"scenario must be none, fraction or threshold, got {self.scenario!r}")
        if self.mc_trials < 1:
            raise ConfigError("mc_trials must be positive")
        if self.source_trials is not None and self.source_trials < 1:
            raise ConfigError("source_trials must be positive")
        if self.scenario == "fraction" and not 0 < self.value < 1:
            raise ConfigError(f"fraction must be in (0, 1), got {self.value}")
        if self.scenario == "threshold" and not 0 < self.value <= 1:
            raise ConfigError(f"threshold must be in (0, 1], got {self.value}")
        self.measures = [centrality.Measure(m).value for m in self.measures]
        if self.scenario != "none" and not self.measures:
            raise ConfigError("a scenario needs at least one measure")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with Path(path).open(encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ExperimentReport:
    config: dict
    records: list[dict]
    aggregate: dict
    failures: int
    generated_at: str = ""

    def to_dict(self, timestamp: bool = True) -> dict:
        d = {
            "config": self.config,
            "records": self.records,
            "aggregate": self.aggregate,
            "failures": self.failures,
        }
        if timestamp:
            d["generated_at"] = self.generated_at
        return d

    def to_json(self, timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2, sort_keys=True)


def derive_seed(master_seed: int, trial: int) -> int:
    """Independent 64-bit stream seed for one trial."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(trial,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _load_or_grow(cfg: ExperimentConfig, seed: int) -> Graph:
    if cfg.model == "file":
        return read_edge_list(cfg.path)
    return generate(cfg.model, cfg.n, cfg.m, cfg.m0_pa, seed)


def _gamma_fields(dist: DistanceDistribution, suffix: str) -> dict:
    try:
        p = fit_gamma(dist)
        return {f"k_{suffix}": p.k, f"theta_{suffix}": p.theta}
    except DegenerateSampleError:
        return {f"k_{suffix}": None, f"theta_{suffix}": None}


def profile_graph(g: Graph, source_trials: int | None, rng) -> tuple[dict, DistanceDistribution]:
    """Clustering, diameter and the averaged curve from one all-pairs BFS sweep."""
    cl = clustering_report(g)
    connected = is_connected(g)
    active = g.active_nodes()
    sources = sample_sources(active, source_trials, np.random.default_rng(rng))
    if connected and len(sources) < len(active):
        D = distance_matrix(g)
        diam = int(D.max())
        pos = np.searchsorted(active, sources)
        counts, unreach = shell_histogram(D[pos], g.active)
    else:
        D = distance_matrix(g, sources)
        diam = int(D.max()) if connected else None
        counts, unreach = shell_histogram(D, g.active)
    curve = DistanceDistribution(counts, g.n_active, unreach, f"averaged over {len(sources)} sources")
    summary = {"gcc1": cl.gcc1, "gcc2": cl.gcc2, "diameter": diam, "connected": connected}
    return summary, curve


def run_trial(cfg: ExperimentConfig, trial: int) -> list[dict]:
    """All records for one trial (one per measure when a scenario is set)."""
    seed = derive_seed(cfg.master_seed, trial)
    base = {"trial": trial, "seed": seed}
    try:
        g = _load_or_grow(cfg, seed)
        summary, curve = profile_graph(g, cfg.source_trials, [seed, 0])
    except Exception as exc:  # noqa: BLE001 - a failed trial is recorded, not fatal
        logger.warning("trial %d failed: %s", trial, exc)
        return [{**base, "measure": "", "status": "failed", "error": str(exc)}]
    base.update(summary)

    if cfg.scenario == "none":
        rec = {**base, "measure": "", "status": "ok", **_gamma_fields(curve, "before"),
               "k_after": None, "theta_after": None, "peak_drop": None, "isolated_count": 0,
               "peak_before": normalized_peak(curve), "peak_after": None,
               "mean_distance_before": curve.mean_distance(), "mean_distance_after": None,
               "curve_before": [float(f) for f in curve.fraction()], "curve_after": None}
        return [rec]

    records = []
    for measure in cfg.measures:
        # same source stream for every measure of a trial
        rng = np.random.default_rng([seed, 1])
        rec = {**base, "measure": measure}
        try:
            if cfg.scenario == "fraction":
                rep = scenario1(g, measure, cfg.value, cfg.source_trials, rng,
                                recompute=cfg.recompute, kappa=cfg.kappa, damping=cfg.damping)
            else:
                rep = scenario2(g, measure, cfg.value, cfg.source_trials, rng,
                                recompute=cfg.recompute, kappa=cfg.kappa, damping=cfg.damping)
            rec["status"] = "ok"
        except ThresholdUnreachable as exc:
            rep = exc.report
            rec["status"] = "failed"
            rec["error"] = str(exc)
        except Exception as exc:  # noqa: BLE001
            logger.warning("trial %d measure %s failed: %s", trial, measure, exc)
            records.append({**rec, "status": "failed", "error": str(exc)})
            continue
        rec.update(_gamma_fields(rep.curve_before, "before"))
        rec.update(_gamma_fields(rep.curve_after, "after"))
        rec.update({
            "peak_drop": rep.peak_drop,
            "isolated_count": rep.isolated_count if rec["status"] == "ok" else None,
            "targets": rep.plan.targets,
            "skipped": rep.plan.skipped,
            "n_sources": rep.n_sources,
            "peak_before": normalized_peak(rep.curve_before),
            "peak_after": normalized_peak(rep.curve_after),
            "mean_distance_before": rep.curve_before.mean_distance(),
            "mean_distance_after": rep.curve_after.mean_distance(),
            "curve_before": [float(f) for f in rep.curve_before.fraction()],
            "curve_after": [float(f) for f in rep.curve_after.fraction()],
        })
        records.append(rec)
    return records


def aggregate(records: list[dict]) -> dict:
    """Mean and standard deviation of each numeric column, per measure."""
    groups: dict[str, list[dict]] = {}
    for r in records:
        if r.get("status") == "ok":
            groups.setdefault(r.get("measure") or "none", []).append(r)
    out = {}
    for name, recs in sorted(groups.items()):
        stats = {"n": len(recs)}
        for col in NUMERIC_COLUMNS:
            vals = [r[col] for r in recs if r.get(col) is not None]
            if vals:
                arr = np.asarray(vals, dtype=float)
                stats[col] = {
                    "mean": float(arr.mean()),
                    "std": float(arr.std(ddof=1)) if len(arr) > 1 else 0.0,
                }
        out[name] = stats
    return out


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    """Run every trial; output is ordered by trial index whatever the worker count."""
    if cfg.model == "file" and not Path(cfg.path).is_file():
        raise ConfigError(f"cannot read graph file {cfg.path}")
    workers = default_workers() if workers is None else max(1, workers)
    trials = range(cfg.mc_trials)
    if workers == 1:
        per_trial = [run_trial(cfg, t) for t in trials]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(run_trial, [cfg] * cfg.mc_trials, trials))
    records = [r for recs in per_trial for r in recs]
    failures = sum(1 for r in records if r.get("status") != "ok")
    return ExperimentReport(
        config=cfg.to_dict(),
        records=records,
        aggregate=aggregate(records),
        failures=failures,
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def write_report(rep: ExperimentReport, path: str | Path, format: str = "json") -> None:
    path = Path(path)
    try:
        if format == "json":
            path.write_text(rep.to_json() + "\n", encoding="utf-8")
        elif format == "csv":
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(CSV_COLUMNS)
                for r in rep.records:
                    writer.writerow(["" if r.get(c) is None else r.get(c) for c in CSV_COLUMNS])
        else:
            raise ValueError(f"unknown report format {format!r}")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def read_report(path: str | Path) -> dict:
    with Path(path).open(encoding="utf-8") as fh:
        return json.load(fh)

"""Multi-trial experiment runner and report emission."""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from . import __version__
from .base import ConfigError, StreamingEstimator
from .baselines import Mascot, TriestImpr
from .exact import ExactCounter, TriangleRecord, interval_distribution, mean_interval
from .metrics import global_error, local_error, trial_statistics
from .stream import StreamOptions, TimedEdge, open_stream, shuffle_stream, timed
from .wrs import DEFAULT_ALPHA, WaitingRoomSampler, WrsConfig

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ALGORITHMS = ("wrs", "triest", "mascot", "exact")


class TrialError(RuntimeError):
    def __init__(self, trial: int, seed: int, cause: BaseException):
        self.trial = trial
        self.seed = seed
        super().__init__(f"trial {trial} (seed {seed}) failed: {cause!r}")


@dataclass
class ExperimentConfig:
    input_path: str
    algorithm: str = "wrs"
    k: Optional[int] = None
    k_frac: Optional[float] = None
    alpha: float = DEFAULT_ALPHA
    trials: int = 1
    base_seed: int = 0
    snapshot_every: Optional[int] = None  # None: n_edges // 20; 0: end only
    output_format: str = "json"
    locality_analysis: bool = False
    shuffle_seed: int = 0
    dedupe: bool = True
    raw_id_mode: str = "int"
    workers: int = 1
    track_nodes: Sequence[int] = ()

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if self.algorithm != "exact":
            if (self.k is None) == (self.k_frac is None):
                raise ConfigError("give exactly one of k or k_frac")
            if self.k is not None and self.k < (3 if self.algorithm == "wrs" else 1):
                raise ConfigError(f"budget k={self.k} is too small for {self.algorithm}")
            if self.k_frac is not None and not 0.0 < self.k_frac <= 1.0:
                raise ConfigError(f"k_frac must lie in (0, 1], got {self.k_frac}")
            if self.algorithm == "wrs" and not 0.0 < self.alpha < 1.0:
                raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.snapshot_every is not None and self.snapshot_every < 0:
            raise ConfigError("snapshot_every must be non-negative")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output format must be json or csv, got {self.output_format!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        StreamOptions(raw_id_mode=self.raw_id_mode)

    def stream_options(self) -> StreamOptions:
        return StreamOptions(dedupe=self.dedupe, raw_id_mode=self.raw_id_mode)


def resolve_budget(n_edges: int, k: Optional[int] = None, k_frac: Optional[float] = None) -> int:
    if k is not None:
        return k
    return max(3, round(k_frac * n_edges))


@dataclass
class GroundTruth:
    n_edges: int
    nodes: list[int]
    global_count: int
    local_counts: dict[int, int]
    global_by_t: list[int]  # index t -> exact count after edge t (index 0 is 0)
    content_hash: str
    stream_stats: dict
    records: Optional[list[TriangleRecord]] = None


_truth_cache: dict[tuple, GroundTruth] = {}


def file_digest(path: Union[str, Path]) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def compute_ground_truth(edges: Sequence[TimedEdge], keep_records: bool = False) -> GroundTruth:
    oracle = ExactCounter(keep_records=keep_records)
    series = [0]
    for e in edges:
        oracle.insert(e)
        series.append(oracle.global_count)
    return GroundTruth(
        n_edges=len(edges),
        nodes=sorted(oracle.adj),
        global_count=oracle.global_count,
        local_counts={u: c for u, c in oracle.local_counts.items() if c},
        global_by_t=series,
        content_hash="",
        stream_stats={},
        records=oracle.records if keep_records else None,
    )


def load_input(config: ExperimentConfig, keep_records: bool = False) -> tuple[list[TimedEdge], GroundTruth]:
    """Parse the input once and compute (or fetch cached) exact counts."""
    opts = config.stream_options()
    stream = open_stream(config.input_path, opts)
    edges = list(stream)
    key = (file_digest(config.input_path), opts.dedupe, opts.skip_self_loops, opts.raw_id_mode)
    truth = _truth_cache.get(key)
    if truth is None or (keep_records and truth.records is None):
        truth = compute_ground_truth(edges, keep_records)
        truth.content_hash = key[0]
        truth.stream_stats = stream.stats()
        _truth_cache[key] = truth
    return edges, truth


def snapshot_schedule(n_edges: int, every: Optional[int]) -> list[int]:
    if n_edges == 0:
        return []
    if every is None:
        every = max(1, n_edges // 20)
    if every == 0:
        return [n_edges]
    points = list(range(every, n_edges + 1, every))
    if not points or points[-1] != n_edges:
        points.append(n_edges)
    return points


def make_estimator(algorithm: str, k: int, alpha: float, seed: int, n_edges: int) -> StreamingEstimator:
    if algorithm == "wrs":
        return WaitingRoomSampler(WrsConfig(k, alpha, seed))
    if algorithm == "triest":
        return TriestImpr(k, seed)
    if algorithm == "mascot":
        return Mascot(min(1.0, k / n_edges) if n_edges else 1.0, seed)
    raise ConfigError(f"no streaming estimator for {algorithm!r}")


@dataclass
class _TrialJob:
    algorithm: str
    k: int
    alpha: float
    schedule: list[int]
    track_nodes: list[int]


_worker: dict[str, Any] = {}


def _init_worker(edges, truth: GroundTruth, job: _TrialJob) -> None:
    _worker["edges"] = edges
    _worker["truth"] = truth
    _worker["job"] = job


def _run_trial(trial: int, seed: int) -> dict:
    edges = _worker["edges"]
    truth: GroundTruth = _worker["truth"]
    job: _TrialJob = _worker["job"]
    try:
        est = make_estimator(job.algorithm, job.k, job.alpha, seed, len(edges))
        schedule = job.schedule
        snaps = []
        i = 0
        next_t = schedule[0] if schedule else -1
        process = est.process_edge
        start = time.perf_counter()
        for e in edges:
            process(e)
            if e[2] == next_t:
                snaps.append([next_t, est.global_count])
                i += 1
                next_t = schedule[i] if i < len(schedule) else -1
        elapsed = time.perf_counter() - start
        local = est.local_counts
        return {
            "trial": trial,
            "seed": seed,
            "global_estimate": est.global_count,
            "global_error": global_error(truth.global_count, est.global_count),
            "local_error": local_error(truth.local_counts, local, truth.nodes) if truth.nodes else 0.0,
            "discovered": est.discovered,
            "tracked_local": {str(u): local.get(u, 0.0) for u in job.track_nodes},
            "snapshots": snaps,
            "elapsed": elapsed,
        }
    except Exception as exc:
        raise TrialError(trial, seed, exc) from exc


def run_trials(
    edges: Sequence[TimedEdge],
    truth: GroundTruth,
    algorithm: str,
    k: int,
    alpha: float,
    seeds: Sequence[int],
    schedule: Sequence[int],
    track_nodes: Sequence[int] = (),
    workers: int = 1,
) -> list[dict]:
    """Run one estimator per seed over ``edges``; results are in seed order."""
    job = _TrialJob(algorithm, k, alpha, list(schedule), list(track_nodes))
    jobs = list(enumerate(seeds))
    if workers <= 1 or len(jobs) <= 1:
        _init_worker(edges, truth, job)
        return [_run_trial(i, s) for i, s in jobs]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(edges, truth, job)) as pool:
        chunk = max(1, len(jobs) // (4 * workers))
        return list(pool.map(_run_trial, [i for i, _ in jobs], [s for _, s in jobs], chunksize=chunk))


@dataclass
class RunReport:
    """Self-describing result of one experiment.

    Everything that depends on wall-clock time lives under ``timing`` so that
    two replays can be compared after dropping that key.
    """

    config: dict
    resolved: dict
    ground_truth: dict
    trials: list[dict] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    locality: Optional[dict] = None
    timing: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION
    version: str = __version__

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def without_timing(self) -> dict:
        d = self.to_dict()
        d.pop("timing", None)
        return d


def _summaries(trials: list[dict]) -> dict:
    out = {}
    for key in ("global_estimate", "global_error", "local_error", "discovered"):
        out[key] = trial_statistics([float(tr[key]) for tr in trials]).to_dict()
    return out


def run_locality_analysis(config: ExperimentConfig, records: Optional[list[TriangleRecord]] = None) -> dict:
    """Closing/total interval tables for the input order and one shuffled order."""
    if records is None:
        _, truth = load_input(config, keep_records=True)
        records = truth.records or []
    edges = list(open_stream(config.input_path, config.stream_options()))
    shuffled_oracle = ExactCounter(keep_records=True).extend(timed(shuffle_stream(edges, config.shuffle_seed)))
    out = {"shuffle_seed": config.shuffle_seed}
    for label, recs in (("real", records), ("shuffled", shuffled_oracle.records)):
        part = {"triangles": len(recs)}
        for which in ("closing", "total"):
            part[which] = interval_distribution(recs, which).to_dict()
            m = mean_interval(recs, which)
            part[f"mean_{which}"] = None if math.isnan(m) else m
        out[label] = part
    return out


def run_experiment(config: ExperimentConfig) -> RunReport:
    config.validate()
    t0 = time.perf_counter()
    edges, truth = load_input(config, keep_records=config.locality_analysis)
    parse_and_truth = time.perf_counter() - t0
    n = len(edges)

    resolved: dict = {"n_edges": n, "n_nodes": len(truth.nodes)}
    seeds = [config.base_seed + i for i in range(config.trials)]
    trials: list[dict] = []
    if config.algorithm != "exact":
        k = resolve_budget(n, config.k, config.k_frac)
        if config.algorithm == "wrs":
            wcfg = WrsConfig(k, config.alpha, config.base_seed)
            resolved.update(k=k, w=wcfg.w, r=wcfg.r, alpha=config.alpha)
        elif config.algorithm == "mascot":
            resolved.update(k=k, p=min(1.0, k / n) if n else 1.0, variant="count-before-sample")
        else:
            resolved.update(k=k)
        resolved["seeds"] = seeds
        schedule = snapshot_schedule(n, config.snapshot_every)
        resolved["snapshot_schedule"] = schedule
        trials = run_trials(
            edges, truth, config.algorithm, k, config.alpha, seeds, schedule,
            config.track_nodes, config.workers,
        )

    timing = {"parse_and_ground_truth_seconds": parse_and_truth}
    if trials:
        elapsed = [tr.pop("elapsed") for tr in trials]
        timing["trial_seconds"] = elapsed
        timing["per_edge_seconds_mean"] = (sum(elapsed) / len(elapsed)) / n if n else 0.0

    schedule = resolved.get("snapshot_schedule", [])
    report = RunReport(
        config=asdict(config) | {"track_nodes": list(config.track_nodes)},
        resolved=resolved,
        ground_truth={
            "global_count": truth.global_count,
            "n_edges": truth.n_edges,
            "n_nodes": len(truth.nodes),
            "content_sha256": truth.content_hash,
            "stream": truth.stream_stats,
            "global_at_snapshots": [[t, truth.global_by_t[t]] for t in schedule],
            "tracked_local": {str(u): truth.local_counts.get(u, 0) for u in config.track_nodes},
        },
        trials=trials,
        metrics=_summaries(trials) if trials else {},
        timing=timing,
    )
    if config.locality_analysis:
        report.locality = run_locality_analysis(config, truth.records)
    return report


def run_alpha_sweep(config: ExperimentConfig, alphas: Sequence[float]) -> list[RunReport]:
    """One WRS report per waiting-room fraction, all on the same seeds."""
    reports = []
    for a in alphas:
        cfg = ExperimentConfig(**{**asdict(config), "alpha": a, "algorithm": "wrs"})
        reports.append(run_experiment(cfg))
    return reports


def load_report(path: Union[str, Path]) -> RunReport:
    with open(path, encoding="utf-8") as fh:
        return RunReport.from_dict(json.load(fh))


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def emit_report(report: RunReport, fmt: str, path: Union[str, Path]) -> Path:
    """Write ``report`` as one JSON document, or as a directory of CSV tables plus ``manifest.json``."""
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path
    if fmt != "csv":
        raise ConfigError(f"unknown report format {fmt!r}")
    path.mkdir(parents=True, exist_ok=True)
    files = {}

    _write_csv(
        path / "snapshots.csv",
        ["trial", "t", "global_estimate"],
        ([tr["trial"], t, g] for tr in report.trials for t, g in tr["snapshots"]),
    )
    files["snapshots"] = "snapshots.csv"
    _write_csv(
        path / "trials.csv",
        ["trial", "seed", "global_estimate", "global_error", "local_error", "discovered"],
        ([tr[c] for c in ("trial", "seed", "global_estimate", "global_error", "local_error", "discovered")]
         for tr in report.trials),
    )
    files["trials"] = "trials.csv"
    _write_csv(
        path / "metrics.csv",
        ["metric", "n", "mean", "variance", "std_error"],
        ([name, s["n"], s["mean"], s["variance"], s["std_error"]] for name, s in report.metrics.items()),
    )
    files["metrics"] = "metrics.csv"
    if report.locality:
        for label in ("real", "shuffled"):
            for which in ("closing", "total"):
                name = f"intervals_{label}_{which}.csv"
                table = report.locality[label][which]
                _write_csv(path / name, table["columns"], table["rows"])
                files[f"intervals_{label}_{which}"] = name

    manifest = {
        "schema_version": report.schema_version,
        "version": report.version,
        "config": report.config,
        "resolved": report.resolved,
        "ground_truth": report.ground_truth,
        "timing": report.timing,
        "files": files,
    }
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path

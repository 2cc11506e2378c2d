"""Randomized ensemble experiments over the inequality catalog.

A run is a grid of cells (ensemble kind x dimension) with a fixed number of
trials per cell.  Each trial draws an input bundle (four matrices and two
unit vectors) from seeds derived by stable hashing, fans the whole catalog
over the parameter grids, and aggregates slack statistics per id.  Results
are bit-reproducible: the per-trial seed depends only on the base seed and
the trial coordinates, trials are folded in canonical order, and the worker
count cannot change any value.
"""

from __future__ import annotations

import csv
import hashlib
import json
import multiprocessing
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .catalog import CATALOG, Evaluator, check, check_all
from .ensembles import MatrixEnsemble, generate, haar_unit_vector
from .linalg import InvalidInputError
from .report import InequalityReport, Tolerances

DEFAULT_ENSEMBLES = ("ginibre", "hermitian_psd", "normal", "nilpotent_shift", "rank_deficient")
DEFAULT_DIMS = (2, 3, 5, 8)
DEFAULT_T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_R_GRID = (1.0, 2.0, 3.0)
DEFAULT_PAIRS = ("power:t", "rational", "exp")
DEFAULT_GAUGES = ("power:1", "power:2", "power:3", "expm1")

_CHUNK_TRIALS = 10
_MEMO_LIMIT = 60_000


@dataclass
class ExperimentConfig:
    """Declarative description of one verification run.

    The pair spec "power:t" expands to one power pair per t-grid value.
    `tolerances` holds overrides for the Tolerances fields; `ids` restricts
    the catalog (None = all ids).
    """

    ensembles: tuple = DEFAULT_ENSEMBLES
    dims: tuple = DEFAULT_DIMS
    trials_per_cell: int = 500
    t_grid: tuple = DEFAULT_T_GRID
    r_grid: tuple = DEFAULT_R_GRID
    pairs: tuple = DEFAULT_PAIRS
    gauges: tuple = DEFAULT_GAUGES
    base_seed: int = 0
    variant: str = "corrected"
    ids: tuple | None = None
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ensembles = tuple(self.ensembles)
        self.dims = tuple(int(d) for d in self.dims)
        self.t_grid = tuple(float(t) for t in self.t_grid)
        self.r_grid = tuple(float(r) for r in self.r_grid)
        self.pairs = tuple(self.pairs)
        self.gauges = tuple(self.gauges)
        if self.ids is not None:
            self.ids = tuple(self.ids)
        if not self.ensembles or not self.dims or self.trials_per_cell < 1:
            raise InvalidInputError("config needs ensembles, dims, and >= 1 trial per cell")
        if self.variant not in ("corrected", "as_stated"):
            raise InvalidInputError(f"unknown variant '{self.variant}'")
        unknown = set(self.ids or ()) - set(CATALOG)
        if unknown:
            raise InvalidInputError(f"unknown catalog ids: {sorted(unknown)}")

    def resolved_pairs(self) -> tuple:
        out = []
        for spec in self.pairs:
            if spec == "power:t":
                out.extend(f"power:{t:g}" for t in self.t_grid)
            else:
                out.append(spec)
        return tuple(dict.fromkeys(out))

    def resolved_tolerances(self) -> Tolerances:
        return Tolerances(**self.tolerances)

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known
        if unknown:
            raise InvalidInputError(f"unknown config fields: {sorted(unknown)}")
        return cls(**obj)


@dataclass
class ExperimentSummary:
    """Per-id aggregates plus the full reports of every failure."""

    config: dict
    per_id: dict
    failures: list
    total_trials: int
    wall_time_seconds: float | None = None

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    def corrected_failures(self) -> list:
        return [f for f in self.failures if f.get("variant") == "corrected"]


def _hash64(*parts) -> int:
    payload = ":".join(str(p) for p in parts).encode("ascii")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big") & (2**63 - 1)


def trial_seed(base_seed: int, e_idx: int, d_idx: int, t_idx: int) -> int:
    return (int(base_seed) + _hash64("cell", e_idx, d_idx, "trial", t_idx)) % (2**63)


def trial_bundle(config: ExperimentConfig, e_idx: int, d_idx: int, t_idx: int):
    """The deterministic input bundle for one trial: 4 matrices, 2 unit vectors."""
    kind = config.ensembles[e_idx]
    dim = config.dims[d_idx]
    seed = trial_seed(config.base_seed, e_idx, d_idx, t_idx)
    mats = [
        generate(MatrixEnsemble(kind=kind, dim=dim, seed=_hash64("mat", seed, j)))
        for j in range(4)
    ]
    rng = np.random.default_rng(_hash64("vec", seed))
    vecs = [haar_unit_vector(rng, dim) for _ in range(2)]
    return mats, vecs, seed


def _run_trial(config: ExperimentConfig, task, memo) -> list[InequalityReport]:
    e_idx, d_idx, t_idx = task
    mats, vecs, _ = trial_bundle(config, e_idx, d_idx, t_idx)
    ev = Evaluator(config.resolved_tolerances(), memo=memo)
    return check_all(
        mats,
        vecs,
        t_grid=config.t_grid,
        r_grid=config.r_grid,
        pairs=config.resolved_pairs(),
        gauges=config.gauges,
        tolerances=config.resolved_tolerances(),
        variant=config.variant,
        evaluator=ev,
        attach_failure_inputs=True,
        ids=config.ids,
    )


class _ChunkAgg:
    __slots__ = ("count", "passed", "failed", "skipped", "slacks", "best")

    def __init__(self):
        self.count = 0
        self.passed = 0
        self.failed = 0
        self.skipped = 0
        self.slacks = []
        self.best = None  # (slack, ordinal, digest)


def _aggregate_reports(reports, ordinal, agg: dict, failures: list, trial_info):
    for rep in reports:
        a = agg.get(rep.id)
        if a is None:
            a = agg[rep.id] = _ChunkAgg()
        a.count += 1
        if rep.skipped:
            a.skipped += 1
            continue
        if rep.passed:
            a.passed += 1
        else:
            a.failed += 1
            failures.append(
                {**rep.to_json_dict(include_inputs=True), "trial": trial_info}
            )
        slack = rep.slack
        if slack is None or (isinstance(slack, float) and np.isnan(slack)):
            slack = float("inf")
        a.slacks.append(slack)
        key = (slack, ordinal, rep.inputs_digest)
        if a.best is None or key < a.best:
            a.best = key


_WORKER = {}


def _worker_init(config_dict):
    _WORKER["config"] = ExperimentConfig.from_dict(config_dict)
    _WORKER["memo"] = {}


def _worker_run_chunk(chunk):
    config = _WORKER["config"]
    memo = _WORKER["memo"]
    agg: dict[str, _ChunkAgg] = {}
    failures: list[dict] = []
    for ordinal, task in chunk:
        if len(memo) > _MEMO_LIMIT:
            memo.clear()
        e_idx, d_idx, t_idx = task
        reports = _run_trial(config, task, memo)
        info = {
            "ensemble": config.ensembles[e_idx],
            "dim": config.dims[d_idx],
            "trial": t_idx,
            "seed": trial_seed(config.base_seed, e_idx, d_idx, t_idx),
        }
        _aggregate_reports(reports, ordinal, agg, failures, info)
    payload = {
        id: (a.count, a.passed, a.failed, a.skipped, np.asarray(a.slacks), a.best)
        for id, a in agg.items()
    }
    return payload, failures


def _fold(chunks_out, config: ExperimentConfig, total_trials: int) -> ExperimentSummary:
    counts: dict[str, list] = {}
    slacks: dict[str, list] = {}
    best: dict[str, tuple] = {}
    failures: list[dict] = []
    for payload, chunk_failures in chunks_out:
        failures.extend(chunk_failures)
        for id, (count, passed, failed, skipped, arr, chunk_best) in payload.items():
            c = counts.setdefault(id, [0, 0, 0, 0])
            c[0] += count
            c[1] += passed
            c[2] += failed
            c[3] += skipped
            if arr.size:
                slacks.setdefault(id, []).append(arr)
            if chunk_best is not None and (id not in best or chunk_best < best[id]):
                best[id] = chunk_best
    per_id = {}
    for id in sorted(counts):
        count, passed, failed, skipped = counts[id]
        arrs = slacks.get(id)
        if arrs:
            all_slack = np.concatenate(arrs)
            finite = all_slack[~np.isnan(all_slack)]
            stats = {
                "min_slack": float(np.min(finite)) if finite.size else None,
                "median_slack": float(np.median(finite)) if finite.size else None,
                "max_slack": float(np.max(finite)) if finite.size else None,
            }
        else:
            all_slack = np.empty(0)
            stats = {"min_slack": None, "median_slack": None, "max_slack": None}
        per_id[id] = {
            "count": count,
            "pass_count": passed,
            "fail_count": failed,
            "skip_count": skipped,
            **stats,
            "argmin_digest": best[id][2] if id in best else None,
            "_slacks": all_slack,
            "_argmin_ordinal": best[id][1] if id in best else None,
        }
    return ExperimentSummary(
        config=_config_echo(config),
        per_id=per_id,
        failures=failures,
        total_trials=total_trials,
    )


def _config_echo(config: ExperimentConfig) -> dict:
    obj = asdict(config)
    obj["ensembles"] = list(config.ensembles)
    obj["dims"] = list(config.dims)
    obj["t_grid"] = list(config.t_grid)
    obj["r_grid"] = list(config.r_grid)
    obj["pairs"] = list(config.pairs)
    obj["gauges"] = list(config.gauges)
    obj["ids"] = list(config.ids) if config.ids is not None else None
    return obj


def run(config: ExperimentConfig, workers: int | None = None) -> ExperimentSummary:
    """Execute the configured experiment.

    `workers` controls process-level parallelism only; the summary is
    byte-identical for any worker count because trials are seeded by their
    coordinates and folded in canonical order.
    """
    start = time.perf_counter()
    tasks = [
        (e, d, t)
        for e in range(len(config.ensembles))
        for d in range(len(config.dims))
        for t in range(config.trials_per_cell)
    ]
    numbered = list(enumerate(tasks))
    chunks = [
        numbered[i : i + _CHUNK_TRIALS] for i in range(0, len(numbered), _CHUNK_TRIALS)
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(int(workers), len(chunks)))
    config_dict = asdict(config)
    if workers == 1:
        _worker_init(config_dict)
        try:
            chunks_out = [_worker_run_chunk(chunk) for chunk in chunks]
        finally:
            _WORKER.clear()
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers, initializer=_worker_init, initargs=(config_dict,)) as pool:
            chunks_out = pool.map(_worker_run_chunk, chunks, chunksize=1)
    summary = _fold(chunks_out, config, len(tasks))
    summary.wall_time_seconds = time.perf_counter() - start
    return summary


def replay_trial_report(config: ExperimentConfig, id: str, trial_info: dict, params=None):
    """Re-run one check against the regenerated bundle of a recorded trial."""
    e_idx = config.ensembles.index(trial_info["ensemble"])
    d_idx = config.dims.index(int(trial_info["dim"]))
    mats, vecs, _ = trial_bundle(config, e_idx, d_idx, int(trial_info["trial"]))
    entry = CATALOG[id]
    inputs = mats[: entry.matrices] + vecs[: entry.vectors]
    variant = config.variant if config.variant in entry.variants else "corrected"
    return check(
        id,
        inputs,
        params,
        config.resolved_tolerances(),
        variant=variant,
        attach_inputs=True,
    )


def min_slack_search(id: str, config: ExperimentConfig, workers: int | None = None):
    """The minimum-slack report for one id over a whole run, with inputs
    attached for replay."""
    if id not in CATALOG:
        raise InvalidInputError(f"unknown inequality id '{id}'")
    restricted = ExperimentConfig(**{**asdict(config), "ids": (id,)})
    summary = run(restricted, workers=workers)
    row = summary.per_id.get(id)
    if not row or row.get("_argmin_ordinal") is None:
        return None
    ordinal = row["_argmin_ordinal"]
    trials = restricted.trials_per_cell
    n_dims = len(restricted.dims)
    e_idx, rest = divmod(ordinal, n_dims * trials)
    d_idx, t_idx = divmod(rest, trials)
    mats, vecs, _ = trial_bundle(restricted, e_idx, d_idx, t_idx)
    reports = check_all(
        mats,
        vecs,
        t_grid=restricted.t_grid,
        r_grid=restricted.r_grid,
        pairs=restricted.resolved_pairs(),
        gauges=restricted.gauges,
        tolerances=restricted.resolved_tolerances(),
        variant=restricted.variant,
        ids=(id,),
    )
    candidates = [r for r in reports if r.slack is not None]
    if not candidates:
        return None
    entry = CATALOG[id]
    best = min(
        candidates,
        key=lambda r: (float("inf") if np.isnan(r.slack) else r.slack, r.inputs_digest),
    )
    return check(
        id,
        mats[: entry.matrices] + vecs[: entry.vectors],
        {k: best.params[k] for k in entry.params if k in best.params} or None,
        restricted.resolved_tolerances(),
        variant=best.variant,
        attach_inputs=True,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def summary_to_dict(summary: ExperimentSummary) -> dict:
    """Canonical JSON payload.

    Volatile fields (wall time) are excluded so identical configurations
    produce byte-identical files.
    """
    per_id = {}
    for id in sorted(summary.per_id):
        row = {k: v for k, v in summary.per_id[id].items() if not k.startswith("_")}
        per_id[id] = row
    return {
        "config": summary.config,
        "total_trials": summary.total_trials,
        "per_id": per_id,
        "failures": summary.failures,
    }


def summary_json_bytes(summary: ExperimentSummary) -> bytes:
    text = json.dumps(summary_to_dict(summary), indent=2, allow_nan=True)
    return (text + "\n").encode("ascii")


def write_summary(path, summary: ExperimentSummary) -> None:
    with open(path, "wb") as fh:
        fh.write(summary_json_bytes(summary))


def write_slack_csv(path, summary: ExperimentSummary) -> None:
    """Per-id slack quantiles."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "id",
                "count",
                "pass_count",
                "fail_count",
                "skip_count",
                "min_slack",
                "q25_slack",
                "median_slack",
                "q75_slack",
                "max_slack",
            ]
        )
        for id in sorted(summary.per_id):
            row = summary.per_id[id]
            arr = row.get("_slacks")
            if arr is None or arr.size == 0:
                quants = [None] * 5
            else:
                finite = arr[~np.isnan(arr)]
                if finite.size == 0:
                    quants = [None] * 5
                else:
                    quants = [
                        float(np.min(finite)),
                        float(np.quantile(finite, 0.25)),
                        float(np.median(finite)),
                        float(np.quantile(finite, 0.75)),
                        float(np.max(finite)),
                    ]
            writer.writerow(
                [
                    id,
                    row["count"],
                    row["pass_count"],
                    row["fail_count"],
                    row["skip_count"],
                    *[repr(q) if q is not None else "" for q in quants],
                ]
            )

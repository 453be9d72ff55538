"""Seeded end-to-end trials and parameter sweeps.

A trial samples G(n, p), shreds it, optionally recovers the centers, runs an
assembler and compares the result with the source graph. Sweeps write one
record per trial to ``<out>.csv`` and ``<out>.jsonl`` (same rows, same
order), a per-cell summary to ``<out>.summary.json`` and wall-clock times to
``<out>.timing.csv``. Timings live apart so that the first three files are
byte-identical across reruns with the same base seed.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .assemble_one import AssemblyOutcome, Status, assemble_from_1nbhd
from .assemble_two import assemble_auto, assemble_diameter2, assemble_from_2nbhd_fingerprint
from .errors import InvariantViolation, ParameterError
from .graph import ErParams, Graph, diameter, sample_er
from .shotgun import ShredTruth, recover_centers, shred_with_truth
from .witness import star_witness

log = logging.getLogger(__name__)

METHOD_RADIUS = {"fingerprint1": 1, "diameter2": 2, "fingerprint2": 2, "auto": 2}
CSV_COLUMNS = ("n", "alpha", "p", "radius", "method", "labeled_centers", "trial", "seed",
               "status", "exact_match", "diagnostics")


@dataclass
class ExperimentConfig:
    n_values: list
    alpha_values: list
    radius: int = 1
    method: str = "fingerprint1"
    trials: int = 20
    base_seed: int = 0
    labeled_centers: bool = True
    output_path: str | None = None
    star_report: bool = False

    def validate(self) -> None:
        if not self.n_values:
            raise ParameterError("n_values is empty")
        if not self.alpha_values:
            raise ParameterError("alpha_values is empty")
        if any(not isinstance(n, int) or isinstance(n, bool) or n < 1 for n in self.n_values):
            raise ParameterError(f"n_values must be positive integers: {self.n_values}")
        if any(not 0.0 < float(a) < 1.0 for a in self.alpha_values):
            raise ParameterError(f"every alpha must lie in (0, 1): {self.alpha_values}")
        if self.trials < 1:
            raise ParameterError("trials must be at least 1")
        if self.method not in METHOD_RADIUS:
            raise ParameterError(f"unknown method {self.method!r}")
        if METHOD_RADIUS[self.method] != self.radius:
            raise ParameterError(f"method {self.method} needs radius {METHOD_RADIUS[self.method]}")
        if not 0 <= self.base_seed < 2**64:
            raise ParameterError("base_seed must fit in 64 unsigned bits")

    @classmethod
    def from_mapping(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ParameterError(f"unknown config keys: {sorted(extra)}")
        try:
            cfg = cls(**data)
        except TypeError as exc:
            raise ParameterError(str(exc)) from None
        cfg.validate()
        return cfg


@dataclass
class TrialRecord:
    n: int
    alpha: float | None
    p: float
    radius: int
    method: str
    labeled_centers: bool
    trial: int
    seed: int
    status: str
    exact_match: bool
    wall_ms: float = 0.0
    diagnostics: dict = field(default_factory=dict)

    def row(self) -> dict:
        """Deterministic fields only, in CSV column order."""
        out = asdict(self)
        out.pop("wall_ms")
        return {k: out[k] for k in CSV_COLUMNS}


def trial_seed(base_seed: int, n: int, alpha: float, trial: int) -> int:
    """Seed of one trial: independent of scheduling, replayable on its own."""
    ss = np.random.SeedSequence([base_seed, n, round(alpha * 1e6), trial])
    return int(ss.generate_state(1, np.uint64)[0])


def _assemble(method: str, coll, n: int, alpha: float | None) -> AssemblyOutcome:
    if method == "fingerprint1":
        return assemble_from_1nbhd(coll)
    if method == "diameter2":
        return assemble_diameter2(coll)
    if method == "fingerprint2":
        return assemble_from_2nbhd_fingerprint(coll)
    if alpha is None:
        raise ParameterError("method auto needs alpha")
    return assemble_auto(coll, n, alpha)


def _center_errors(coll, truth: ShredTruth) -> int:
    return sum(1 for i, view in enumerate(coll.views)
               if truth.origin[i][view.center_pos] != truth.centers[i])


def _matches(g: Graph, out: Graph | None, truth: ShredTruth, labeled: bool) -> bool:
    if out is None or out.n != g.n:
        return False
    if not labeled:
        # surrogate label i stands for the source vertex behind view i
        out = out.relabel(list(truth.centers))
    return out == g


def run_trial(n: int, alpha: float | None, radius: int, method: str, seed: int,
              labeled_centers: bool = True, p: float | None = None,
              trial: int = 0, star_report: bool = False) -> TrialRecord:
    """One seeded pipeline run; any failure becomes status Failed.

    ``p`` overrides ``n ** -alpha``. The anonymization seed is ``seed + 1``.
    """
    if method not in METHOD_RADIUS:
        raise ParameterError(f"unknown method {method!r}")
    if METHOD_RADIUS[method] != radius:
        raise ParameterError(f"method {method} needs radius {METHOD_RADIUS[method]}")
    params = ErParams(n, alpha=None if p is not None else alpha, p=p, seed=seed)
    start = time.perf_counter()
    diagnostics: dict = {}
    status, exact = Status.FAILED, False
    try:
        g = sample_er(params)
        if star_report and alpha is not None:
            diagnostics["star"] = star_witness(g, alpha).to_dict()
        coll, truth = shred_with_truth(g, radius, (seed + 1) % 2**64, labeled_centers)
        if not labeled_centers:
            est = alpha if alpha is not None else -math.log(params.prob) / math.log(n)
            coll = recover_centers(coll, n, est)
            diagnostics["center_errors"] = _center_errors(coll, truth)
        outcome = _assemble(method, coll, n, alpha)
        diagnostics.update(outcome.diagnostics)
        status = outcome.status
        exact = _matches(g, outcome.graph, truth, labeled_centers)
    except (AssertionError, InvariantViolation):
        raise
    except Exception as exc:  # reported, never raised
        diagnostics["error"] = f"{type(exc).__name__}: {exc}"
        status, exact = Status.FAILED, False
    wall = (time.perf_counter() - start) * 1e3
    return TrialRecord(n, alpha, params.prob, radius, method, labeled_centers, trial, seed,
                       str(status), exact, wall, diagnostics)


def check_soundness(rec: TrialRecord) -> None:
    if rec.exact_match and rec.status != str(Status.EXACT_SUCCESS):
        raise InvariantViolation(f"exact match reported as {rec.status}: {rec.row()}")
    if rec.labeled_centers and rec.status == str(Status.EXACT_SUCCESS) and not rec.exact_match:
        raise InvariantViolation(f"ExactSuccess without exact match: {rec.row()}")


# -- sweeps -----------------------------------------------------------------

@dataclass
class SweepResult:
    records: list[TrialRecord]
    summary: list[dict]
    paths: dict[str, Path]


def output_paths(stem) -> dict[str, Path]:
    stem = str(stem)
    for ext in (".csv", ".jsonl"):
        if stem.endswith(ext):
            stem = stem[: -len(ext)]
    return {key: Path(stem + suffix) for key, suffix in
            (("csv", ".csv"), ("jsonl", ".jsonl"), ("summary", ".summary.json"),
             ("timing", ".timing.csv"))}


def _check_writable(paths: dict[str, Path]) -> None:
    for path in paths.values():
        parent = path.parent if str(path.parent) else Path(".")
        if not parent.is_dir():
            raise OSError(f"output directory {parent} does not exist")
        if path.is_dir():
            raise OSError(f"output path {path} is a directory")
        if not os.access(parent, os.W_OK) or (path.exists() and not os.access(path, os.W_OK)):
            raise OSError(f"cannot write {path}")


def _diag_json(d: dict) -> str:
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def records_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        row = rec.row()
        row["diagnostics"] = _diag_json(row["diagnostics"])
        w.writerow([row[k] for k in CSV_COLUMNS])
    return buf.getvalue()


def records_jsonl(records) -> str:
    return "".join(json.dumps(rec.row(), sort_keys=False, separators=(",", ":")) + "\n"
                   for rec in records)


def summarize(records) -> list[dict]:
    cells: dict[tuple, list[TrialRecord]] = {}
    for rec in records:
        cells.setdefault((rec.n, rec.alpha), []).append(rec)
    out = []
    for (n, alpha), recs in sorted(cells.items()):
        ok = sum(r.status == str(Status.EXACT_SUCCESS) for r in recs)
        match = sum(r.exact_match for r in recs)
        out.append({"n": n, "alpha": alpha, "trials": len(recs), "exact_success": ok,
                    "exact_match": match, "success_rate": match / len(recs),
                    "ambiguous": sum(r.status == str(Status.AMBIGUOUS) for r in recs),
                    "failed": sum(r.status == str(Status.FAILED) for r in recs)})
    return out


def run_sweep(cfg: ExperimentConfig, progress=None) -> SweepResult:
    """Run every (n, alpha, trial) of the grid and write the result files.

    Paths are checked before the first trial. Any soundness violation aborts
    with InvariantViolation.
    """
    cfg.validate()
    paths = output_paths(cfg.output_path) if cfg.output_path else {}
    if paths:
        _check_writable(paths)
    records = []
    for n in cfg.n_values:
        for alpha in cfg.alpha_values:
            for t in range(cfg.trials):
                seed = trial_seed(cfg.base_seed, n, alpha, t)
                rec = run_trial(n, alpha, cfg.radius, cfg.method, seed, cfg.labeled_centers,
                                trial=t, star_report=cfg.star_report)
                check_soundness(rec)
                log.info("n=%d alpha=%g trial=%d %s match=%s", n, alpha, t, rec.status, rec.exact_match)
                if progress is not None:
                    progress(rec)
                records.append(rec)
    records.sort(key=lambda r: (r.n, r.alpha, r.trial))
    summary = summarize(records)
    if paths:
        paths["csv"].write_text(records_csv(records), encoding="utf-8")
        paths["jsonl"].write_text(records_jsonl(records), encoding="utf-8")
        paths["summary"].write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
        with paths["timing"].open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("n", "alpha", "trial", "wall_ms"))
            for rec in records:
                w.writerow((rec.n, rec.alpha, rec.trial, f"{rec.wall_ms:.3f}"))
    return SweepResult(records, summary, paths)


# -- diameter sanity check --------------------------------------------------

def diameter_probability(n: int, c: float) -> float:
    """p = c * sqrt(ln n / n), natural log."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    return c * math.sqrt(math.log(n) / n)


def diameter_check(n: int, c: float, trials: int, seed: int = 0) -> float:
    """Fraction of ``trials`` samples at p = c sqrt(ln n / n) with diameter exactly 2."""
    p = diameter_probability(n, c)
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"p = {p:.4g} is not in (0, 1]")
    if trials < 1:
        raise ParameterError("trials must be at least 1")
    hits = 0
    for t in range(trials):
        s = int(np.random.SeedSequence([seed, t]).generate_state(1, np.uint64)[0])
        if diameter(sample_er(ErParams(n, p=p, seed=s))) == 2:
            hits += 1
    return hits / trials

"""Size and power experiment harness.

A plan is a grid over (model, T, alpha, innovation); each cell runs R
independent replications of simulate -> test. Every replication's seed
is derived by name from the master seed, and results are reduced in
plan order, so output files are byte-identical for any worker count.
Wall-clock timings live only on the in-memory report, never in files.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .engine import Localisation, TestConfig, run_test, weight_profile
from .errors import InvalidPlanError, UnknownModelError, WaveContrastError
from .rng import derive_seed, substream
from .simulate import INNOVATIONS, MODEL_TAGS, N_MODELS, ModelSpec, gen_model

SUITES = ("size", "power")


@dataclass(frozen=True)
class ExperimentPlan:
    suite: str
    models: tuple
    T_values: tuple
    alphas: tuple = (0.1, 0.05)
    innovations: tuple = ("normal",)
    R: int = 100
    B: int = 200
    master_seed: int = 0
    M: int = 40
    m_T: int | None = None
    J_star: int | None = None
    workers: int = 1
    out_dir: Path | None = None
    figures: bool = True

    def __post_init__(self):
        if self.suite not in SUITES:
            raise InvalidPlanError(f"suite must be one of {SUITES}, got {self.suite!r}")
        if not self.models:
            raise InvalidPlanError("plan lists no models")
        for tag in self.models:
            if tag not in MODEL_TAGS:
                raise UnknownModelError(f"unknown model {tag!r}; choose one of {', '.join(MODEL_TAGS)}")
        for dist in self.innovations:
            if dist not in INNOVATIONS:
                raise UnknownModelError(f"unknown innovation distribution {dist!r}; choose one of {', '.join(INNOVATIONS)}")
        if not self.T_values:
            raise InvalidPlanError("plan lists no series lengths")
        if self.R < 1:
            raise InvalidPlanError(f"need R >= 1 replications, got {self.R}")
        for alpha in self.alphas:
            if not 0.0 < alpha < 1.0:
                raise InvalidPlanError(f"alpha must be in (0, 1), got {alpha}")
        if self.workers < 1:
            raise InvalidPlanError(f"need workers >= 1, got {self.workers}")


@dataclass
class CellResult:
    model: str
    T: int
    alpha: float
    innovation: str
    rejections: int
    R: int
    fraction: float | None
    error: str | None
    mean_runtime_ms: float
    localisations: list = field(default_factory=list)


@dataclass
class ExperimentReport:
    plan: ExperimentPlan
    cells: list
    profiles: dict
    written: list


def _cells_of(plan: ExperimentPlan) -> list[tuple]:
    cells = []
    for dist in plan.innovations:
        for model in plan.models:
            # innovation choice only matters for the stationary models
            if model in N_MODELS and dist != plan.innovations[0]:
                continue
            for T in plan.T_values:
                for alpha in plan.alphas:
                    cells.append((model, T, alpha, dist))
    return cells


def _replication(task: tuple):
    """Run one simulate -> test replication. Returns
    (reject, Localisation, error message, runtime ms)."""
    (model, T, alpha, dist, rep, master_seed, M, m_T, J_star, B) = task
    seed = derive_seed(master_seed, "experiment", model, T, alpha, dist, rep)
    t0 = time.perf_counter()
    try:
        x = gen_model(ModelSpec(tag=model, T=T, innovations=dist), substream(seed, "data"))
        cfg = TestConfig(alpha=alpha, M=M, m_T=m_T, J_star=J_star, B=B, master_seed=seed)
        result = run_test(x, cfg, keep_tables=False)
    except WaveContrastError as exc:
        return False, None, f"{type(exc).__name__}: {exc}", (time.perf_counter() - t0) * 1e3
    return result.reject, result.argmax, None, (time.perf_counter() - t0) * 1e3


def run_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Execute the plan and write its report files (if out_dir is set).

    Replications are farmed out at task granularity; results are keyed
    by (cell, replication) index so the reduction order is fixed.
    """
    cells = _cells_of(plan)
    tasks = []
    for ci, (model, T, alpha, dist) in enumerate(cells):
        for rep in range(plan.R):
            tasks.append((model, T, alpha, dist, rep, plan.master_seed,
                          plan.M, plan.m_T, plan.J_star, plan.B))
    outcomes = [None] * len(tasks)
    if plan.workers == 1:
        for i, task in enumerate(tasks):
            outcomes[i] = _replication(task)
    else:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            for i, outcome in enumerate(pool.map(_replication, tasks, chunksize=4)):
                outcomes[i] = outcome

    results: list[CellResult] = []
    for ci, (model, T, alpha, dist) in enumerate(cells):
        chunk = outcomes[ci * plan.R : (ci + 1) * plan.R]
        errors = [msg for _, _, msg, _ in chunk if msg is not None]
        runtimes = [ms for _, _, _, ms in chunk]
        if errors:
            results.append(CellResult(model=model, T=T, alpha=alpha, innovation=dist,
                                      rejections=0, R=plan.R, fraction=None,
                                      error=errors[0],
                                      mean_runtime_ms=float(np.mean(runtimes))))
            continue
        rejections = sum(1 for reject, _, _, _ in chunk if reject)
        results.append(CellResult(
            model=model, T=T, alpha=alpha, innovation=dist,
            rejections=rejections, R=plan.R, fraction=rejections / plan.R,
            error=None, mean_runtime_ms=float(np.mean(runtimes)),
            localisations=[loc for _, loc, _, _ in chunk]))

    profiles = {}
    if plan.suite == "power":
        lead_alpha, lead_dist = plan.alphas[0], plan.innovations[0]
        for cell in results:
            key = (cell.model, cell.T)
            if (cell.alpha == lead_alpha and cell.innovation == lead_dist
                    and cell.error is None and key not in profiles):
                profiles[key] = (
                    weight_profile(cell.localisations, "equal", cell.T),
                    weight_profile(cell.localisations, "reciprocal", cell.T),
                )

    written = []
    if plan.out_dir is not None:
        written = write_report_files(plan, results, profiles)
    return ExperimentReport(plan=plan, cells=results, profiles=profiles, written=written)


# ---------------------------------------------------------------------------
# report files


def _fmt(v) -> str:
    return repr(float(v))


def write_report_files(plan: ExperimentPlan, cells: list, profiles: dict) -> list:
    """Write results CSVs (one per innovation), profile CSVs, a JSON
    summary, and (optionally) figures. All content is deterministic."""
    out = Path(plan.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    for dist in plan.innovations:
        rows = [c for c in cells if c.innovation == dist and c.error is None]
        if not rows and dist != plan.innovations[0]:
            continue
        path = out / f"{plan.suite}_{dist}.csv"
        with open(path, "w", newline="\n") as fh:
            fh.write("model,T,alpha,rejections,R,fraction\n")
            for c in rows:
                fh.write(f"{c.model},{c.T},{_fmt(c.alpha)},{c.rejections},{c.R},{_fmt(c.fraction)}\n")
        written.append(path)

    for (model, T), (w_eq, w_rec) in sorted(profiles.items()):
        path = out / f"profile_{model}_T{T}.csv"
        with open(path, "w", newline="\n") as fh:
            fh.write("t,weight_scheme_i,weight_scheme_ii\n")
            for t in range(T):
                fh.write(f"{t},{_fmt(w_eq[t])},{_fmt(w_rec[t])}\n")
        written.append(path)

    summary = {
        "suite": plan.suite,
        "models": list(plan.models),
        "T_values": list(plan.T_values),
        "alphas": list(plan.alphas),
        "innovations": list(plan.innovations),
        "R": plan.R,
        "B": plan.B,
        "M": plan.M,
        "m_T": plan.m_T,
        "J_star": plan.J_star,
        "master_seed": plan.master_seed,
        "version": __version__,
        "cells": [
            {"model": c.model, "T": c.T, "alpha": c.alpha, "innovation": c.innovation,
             "rejections": c.rejections, "R": c.R, "fraction": c.fraction, "error": c.error}
            for c in cells
        ],
    }
    summary_path = out / "summary.json"
    with open(summary_path, "w", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(summary_path)

    if plan.figures:
        from . import figures
        for dist in plan.innovations:
            rows = [c for c in cells if c.innovation == dist and c.error is None]
            if rows:
                path = out / f"{plan.suite}_{dist}.png"
                figures.save_fraction_figure(rows, path, f"{plan.suite} suite, {dist} innovations")
                written.append(path)
        for (model, T), (w_eq, w_rec) in sorted(profiles.items()):
            path = out / f"profile_{model}_T{T}.png"
            figures.save_profile_figure(np.arange(T), w_eq, w_rec, path, f"{model}, T = {T}")
            written.append(path)

    return written


def read_results_csv(path) -> list[dict]:
    """Read a results CSV back into row dicts (exact float round-trip)."""
    rows = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            parts = line.strip().split(",")
            row = dict(zip(header, parts))
            row["T"] = int(row["T"])
            row["alpha"] = float(row["alpha"])
            row["rejections"] = int(row["rejections"])
            row["R"] = int(row["R"])
            row["fraction"] = float(row["fraction"])
            rows.append(row)
    return rows


def read_profile_csv(path) -> dict[str, np.ndarray]:
    """Read a profile CSV back into arrays keyed by column name."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        cols = [[] for _ in header]
        for line in fh:
            for col, part in zip(cols, line.strip().split(",")):
                col.append(float(part))
    return {name: np.array(col) for name, col in zip(header, cols)}

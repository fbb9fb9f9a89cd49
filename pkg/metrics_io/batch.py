"""
metrics_io/batch.py – multi-seed protocol comparison and the β study.

`run_batch` simulates every (protocol, seed) cell, optionally in a process
pool, and always aggregates in (protocol, seed) order so the tables do not
depend on scheduling. A cell that raises is recorded with its error text
and the batch continues.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from clustering.soft_kmeans import soft_kmeans, top_two_gap
from common.metadata import MetadataRecorder
from common.progress import ProgressTracker
from core.config import NetworkConfig
from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array
from density.centers import select_initial_centers
from protocol.simulator import simulate
from protocol.state import ProtocolKind

logger = logging.getLogger(__name__)

METRIC_KEYS = ("fnd", "hnd", "lnd")


@dataclass
class BatchResult:
    runs: pd.DataFrame
    summary: pd.DataFrame
    errors: List[Dict[str, Any]] = field(default_factory=list)


def _run_cell(config: NetworkConfig, kind: str, seed: int, checkpoints: Optional[Sequence[int]]) -> Dict[str, Any]:
    """One batch cell; top-level so worker processes can pickle it."""
    cfg = config if checkpoints is None else config.replace(ev_checkpoints=list(checkpoints))
    result = simulate(cfg, kind, seed)
    return {"protocol": kind, "seed": seed, "status": "ok", "error": "", **result.metrics.as_row()}


def _failed(kind: str, seed: int, exc: BaseException) -> Dict[str, Any]:
    logger.error("batch cell %s seed=%d failed: %s", kind, seed, exc)
    return {"protocol": kind, "seed": seed, "status": "error", "error": f"{type(exc).__name__}: {exc}"}


def summarize(runs: pd.DataFrame, kinds: Sequence[str]) -> pd.DataFrame:
    """
    Mean and sample standard deviation (0 for a single run) of FND, HND,
    LND and every EV checkpoint, one row per protocol in `kinds` order.
    """
    value_cols = [c for c in runs.columns if c in METRIC_KEYS or c.startswith("ev_")]
    rows = []
    for kind in kinds:
        cell = runs[runs["protocol"] == kind]
        ok = cell[cell["status"] == "ok"]
        row: Dict[str, Any] = {"protocol": kind, "runs": len(ok), "failed": len(cell) - len(ok)}
        for col in value_cols:
            values = ok[col].to_numpy(dtype=float)
            row[f"{col}_mean"] = float(values.mean()) if len(values) else float("nan")
            row[f"{col}_std"] = float(values.std(ddof=1)) if len(values) > 1 else 0.0
        rows.append(row)
    return pd.DataFrame.from_records(rows)


def run_batch(
    config: NetworkConfig,
    kinds: Sequence[ProtocolKind | str],
    seeds: Sequence[int],
    *,
    workers: int = 1,
    checkpoints: Optional[Sequence[int]] = None,
    metadata: Optional[MetadataRecorder] = None,
    live_progress: bool = False,
) -> BatchResult:
    if not kinds or not seeds:
        raise ParameterError("run_batch needs at least one protocol and one seed")
    config.validate()
    names = [ProtocolKind.parse(k).value for k in kinds]
    cells = [(kind, int(seed)) for kind in names for seed in seeds]

    tracker = ProgressTracker("batch", logger, metadata, total=len(cells), live=live_progress)
    results: Dict[tuple, Dict[str, Any]] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_run_cell, config, kind, seed, checkpoints): (kind, seed) for kind, seed in cells}
            for fut in as_completed(futures):
                kind, seed = futures[fut]
                try:
                    results[(kind, seed)] = fut.result()
                except Exception as exc:
                    results[(kind, seed)] = _failed(kind, seed, exc)
                tracker.tick(f"{kind} seed={seed}")
    else:
        for kind, seed in cells:
            try:
                results[(kind, seed)] = _run_cell(config, kind, seed, checkpoints)
            except Exception as exc:
                results[(kind, seed)] = _failed(kind, seed, exc)
            tracker.tick(f"{kind} seed={seed}")

    ordered = [results[cell] for cell in cells]
    errors = [r for r in ordered if r["status"] != "ok"]
    tracker.done(failed=len(errors))

    runs = pd.DataFrame.from_records(ordered)
    return BatchResult(runs=runs, summary=summarize(runs, names), errors=errors)


def beta_sweep(layout: PointsLike, config: NetworkConfig, betas: Sequence[float]) -> pd.DataFrame:
    """
    Membership of the boundary nodes under different stiffness values.

    Soft k-means is started from the same density-selected centers for every
    β. Reported nodes are those whose top-two membership gap is below
    `reassign_threshold` for at least one β; `boundary` marks the β values
    at which they are.
    """
    x = as_points_array(layout)
    if len(x) < 2:
        raise ParameterError("beta sweep needs at least two nodes")
    if not betas or any(b <= 0 for b in betas):
        raise ParameterError(f"betas must be positive, got {list(betas)}")

    init = select_initial_centers(x, config, config.forced_k).as_array()
    per_beta = []
    for beta in betas:
        res = soft_kmeans(x, init, float(beta), config.convergence_eps, config.r_max)
        z = res.z.z
        order = np.argsort(-z, axis=0, kind="stable")
        per_beta.append((float(beta), z, order, top_two_gap(res.z)))
        logger.debug("β=%g: %d iterations, converged=%s", beta, res.iterations, res.converged)

    flagged = np.zeros(len(x), dtype=bool)
    for _, _, _, gap in per_beta:
        flagged |= gap < config.reassign_threshold

    rows = []
    for beta, z, order, gap in per_beta:
        for j in np.flatnonzero(flagged):
            first, second = (int(order[0, j]), int(order[1, j])) if z.shape[0] > 1 else (int(order[0, j]), -1)
            rows.append({
                "beta":     beta,
                "node_id":  int(j),
                "cluster":  first,
                "p_first":  float(z[first, j]),
                "other":    second,
                "p_second": float(z[second, j]) if second >= 0 else 0.0,
                "gap":      float(gap[j]),
                "boundary": bool(gap[j] < config.reassign_threshold),
            })
    columns = ["beta", "node_id", "cluster", "p_first", "other", "p_second", "gap", "boundary"]
    return pd.DataFrame.from_records(rows, columns=columns)

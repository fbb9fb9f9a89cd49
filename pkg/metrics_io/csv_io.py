"""
metrics_io/csv_io.py – tabular outputs.

Every table is a pandas DataFrame with a fixed column order:

  rounds.csv          round, node_id, residual_j, alive, cluster, role
  events.csv          round, event, node_id, cluster
  alive.csv           round, alive_count, energy_spent_j
  metrics.csv         protocol, seed, fnd, hnd, lnd, total_rounds, *_censored, ev_<round>…
  decision_graph.csv  node_id, rho, delta, gamma
  residual_curve.csv  round, rank, residual_j
  layout / assignment node_id, x_m, y_m[, cluster]

Floats are written with the shortest repr that parses back to the same
double, and read back with `float_precision="round_trip"`, so a parsed file
re-serializes byte for byte.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from core.errors import ConfigError
from core.geometry import PointsLike, as_points_array
from core.types import Role

from .metrics import residual_curve, snapshot_at
from .records import LifetimeMetrics, RoundLog

logger = logging.getLogger(__name__)

ROUND_COLUMNS = ["round", "node_id", "residual_j", "alive", "cluster", "role"]
EVENT_COLUMNS = ["round", "event", "node_id", "cluster"]
ALIVE_COLUMNS = ["round", "alive_count", "energy_spent_j"]
GRAPH_COLUMNS = ["node_id", "rho", "delta", "gamma"]
CURVE_COLUMNS = ["round", "rank", "residual_j"]
LAYOUT_COLUMNS = ["node_id", "x_m", "y_m"]


# ───────────────────────── frames ─────────────────────────────────
def rounds_frame(logs: Sequence[RoundLog]) -> pd.DataFrame:
    if not logs:
        return pd.DataFrame(columns=ROUND_COLUMNS)
    parts = []
    for log in logs:
        parts.append(pd.DataFrame({
            "round":      np.full(log.n, log.round, dtype=int),
            "node_id":    np.arange(log.n),
            "residual_j": log.residual,
            "alive":      log.residual > 0,
            "cluster":    np.asarray(log.labels, dtype=int),
            "role":       [Role(int(r)).label for r in log.roles],
        }))
    return pd.concat(parts, ignore_index=True)[ROUND_COLUMNS]


def events_frame(logs: Sequence[RoundLog]) -> pd.DataFrame:
    rows = [
        {"round": log.round, "event": str(getattr(ev.kind, "value", ev.kind)),
         "node_id": int(ev.node_id), "cluster": int(ev.cluster)}
        for log in logs for ev in log.events
    ]
    return pd.DataFrame(rows, columns=EVENT_COLUMNS)


def alive_frame(logs: Sequence[RoundLog]) -> pd.DataFrame:
    return pd.DataFrame(
        [{"round": log.round, "alive_count": log.alive_count, "energy_spent_j": log.energy_spent} for log in logs],
        columns=ALIVE_COLUMNS,
    )


def metrics_frame(rows: Iterable[tuple[str, int, LifetimeMetrics]]) -> pd.DataFrame:
    """One row per (protocol, seed, metrics)."""
    records = [{"protocol": kind, "seed": seed, **m.as_row()} for kind, seed, m in rows]
    return pd.DataFrame.from_records(records)


def decision_graph_frame(profile) -> pd.DataFrame:
    if profile is None:
        return pd.DataFrame(columns=GRAPH_COLUMNS)
    return pd.DataFrame({
        "node_id": np.asarray(profile.node_ids, dtype=int),
        "rho":     profile.rho,
        "delta":   profile.delta,
        "gamma":   profile.gamma,
    })[GRAPH_COLUMNS]


def residual_curve_frame(logs: Sequence[RoundLog], checkpoints: Sequence[int]) -> pd.DataFrame:
    """Ascending residual energies at each checkpoint (the frozen end state past the run)."""
    if not logs:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    parts = []
    for cp in checkpoints:
        curve = residual_curve(snapshot_at(list(logs), int(cp)))
        parts.append(pd.DataFrame({"round": int(cp), "rank": np.arange(len(curve)), "residual_j": curve}))
    if not parts:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    return pd.concat(parts, ignore_index=True)[CURVE_COLUMNS]


def layout_frame(points: PointsLike, labels: Optional[Sequence[int]] = None) -> pd.DataFrame:
    x = as_points_array(points)
    df = pd.DataFrame({"node_id": np.arange(len(x)), "x_m": x[:, 0], "y_m": x[:, 1]})
    if labels is not None:
        df["cluster"] = np.asarray(labels, dtype=int)
    return df


# ───────────────────────── file I/O ───────────────────────────────
def write_csv(table: pd.DataFrame | Sequence[RoundLog], path: str | Path) -> Path:
    """
    Write a DataFrame, or a list of RoundLogs as the round table.
    I/O failures are raised as OSError naming the path.
    """
    path = Path(path)
    df = table if isinstance(table, pd.DataFrame) else rounds_frame(list(table))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, lineterminator="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.debug("wrote %s (%d rows)", path, len(df))
    return path


def read_csv(path: str | Path) -> pd.DataFrame:
    path = Path(path)
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except pd.errors.EmptyDataError as exc:
        raise ConfigError(f"{path} is empty") from exc


def load_layout(path: str | Path) -> np.ndarray:
    """Positions ordered by node_id; ids must be exactly 0..n−1."""
    df = read_csv(path)
    missing = [c for c in LAYOUT_COLUMNS if c not in df.columns]
    if missing:
        raise ConfigError(f"layout {path} lacks columns {missing}")
    df = df.sort_values("node_id")
    ids = df["node_id"].to_numpy()
    if len(ids) == 0:
        raise ConfigError(f"layout {path} has no nodes")
    if not np.array_equal(ids, np.arange(len(ids))):
        raise ConfigError(f"layout {path}: node_id must run 0..{len(ids) - 1} without gaps")
    xy = df[["x_m", "y_m"]].to_numpy(dtype=float)
    if not np.isfinite(xy).all():
        raise ConfigError(f"layout {path} has non-finite coordinates")
    return xy


def write_run_tables(result, out_dir: str | Path) -> List[Path]:
    """All per-run tables of one SimulationResult into `out_dir`."""
    out = Path(out_dir)
    checkpoints = result.metrics.ev_by_round.keys()
    return [
        write_csv(rounds_frame(result.logs), out / "rounds.csv"),
        write_csv(events_frame(result.logs), out / "events.csv"),
        write_csv(alive_frame(result.logs), out / "alive.csv"),
        write_csv(metrics_frame([(result.kind.value, result.seed, result.metrics)]), out / "metrics.csv"),
        write_csv(decision_graph_frame(result.decision_graph), out / "decision_graph.csv"),
        write_csv(residual_curve_frame(result.logs, list(checkpoints)), out / "residual_curve.csv"),
    ]

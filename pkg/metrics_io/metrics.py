"""
metrics_io/metrics.py – lifetime metrics and energy balance.

FND  first round with a dead node
HND  first round with at least half of the nodes dead
LND  first round with alive count ≤ n − ⌈f·n⌉ (f = death_fraction_for_lnd)

A metric that is never reached is reported as the last simulated round and
flagged as censored. EV is the population variance of all n residual
energies, dead nodes included at 0 J; checkpoints past the end of a run use
the final residuals.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

import numpy as np

from core.config import NetworkConfig, lnd_alive_limit
from core.errors import ParameterError

from .records import LifetimeMetrics, RoundLog


def energy_variance(residual: Sequence[float]) -> float:
    e = np.asarray(residual, dtype=float)
    if e.size == 0:
        raise ParameterError("energy variance needs at least one node")
    return float(np.var(e))


def residual_curve(log: RoundLog) -> np.ndarray:
    """Residual energies of one round sorted ascending."""
    return np.sort(log.residual)


def _first_round(logs: List[RoundLog], limit: int) -> Optional[int]:
    for log in logs:
        if log.alive_count <= limit:
            return log.round
    return None


def snapshot_at(logs: List[RoundLog], round_index: int) -> RoundLog:
    """Log of `round_index`, or the last earlier one (the frozen end state)."""
    best = logs[0]
    for log in logs:
        if log.round > round_index:
            break
        best = log
    return best


def lifetime_metrics(
    logs: List[RoundLog],
    config: Optional[NetworkConfig] = None,
    *,
    checkpoints: Optional[Sequence[int]] = None,
) -> LifetimeMetrics:
    if not logs:
        raise ParameterError("lifetime metrics need at least one round log")
    cfg = config or NetworkConfig()
    n = logs[0].n
    total = logs[-1].round

    found = {
        "fnd": _first_round(logs, n - 1),
        "hnd": _first_round(logs, n // 2),
        # capped at the HND limit so LND never precedes HND when f < 0.5
        "lnd": _first_round(logs, min(lnd_alive_limit(n, cfg.death_fraction_for_lnd), n // 2)),
    }
    cps = cfg.ev_checkpoints if checkpoints is None else tuple(checkpoints)
    ev: Dict[int, float] = {int(cp): energy_variance(snapshot_at(logs, cp).residual) for cp in cps}

    return LifetimeMetrics(
        fnd          = found["fnd"] if found["fnd"] is not None else total,
        hnd          = found["hnd"] if found["hnd"] is not None else total,
        lnd          = found["lnd"] if found["lnd"] is not None else total,
        total_rounds = total,
        ev_by_round  = ev,
        fnd_censored = found["fnd"] is None,
        hnd_censored = found["hnd"] is None,
        lnd_censored = found["lnd"] is None,
    )

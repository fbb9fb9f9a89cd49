"""
metrics_io/records.py – per-round log and lifetime summary records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional

import numpy as np

if TYPE_CHECKING:
    from protocol.state import Event


@dataclass
class RoundLog:
    round: int
    residual: np.ndarray
    alive_count: int
    events: List["Event"] = field(default_factory=list)
    per_cluster_sizes: List[int] = field(default_factory=list)
    energy_spent: float = 0.0
    labels: Optional[np.ndarray] = None
    roles: Optional[np.ndarray] = None

    def __post_init__(self):
        self.residual = np.asarray(self.residual, dtype=float)
        n = len(self.residual)
        if self.labels is None:
            self.labels = np.full(n, -1, dtype=int)
        if self.roles is None:
            self.roles = np.zeros(n, dtype=np.int8)

    @property
    def n(self) -> int:
        return len(self.residual)

    @property
    def network_dead(self) -> bool:
        return self.alive_count == 0

    def deaths(self) -> List[int]:
        return [e.node_id for e in self.events if e.kind == "DEATH"]


@dataclass
class LifetimeMetrics:
    fnd: int
    hnd: int
    lnd: int
    total_rounds: int
    ev_by_round: Dict[int, float] = field(default_factory=dict)
    fnd_censored: bool = False
    hnd_censored: bool = False
    lnd_censored: bool = False

    def as_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "fnd":          self.fnd,
            "hnd":          self.hnd,
            "lnd":          self.lnd,
            "total_rounds": self.total_rounds,
            "fnd_censored": self.fnd_censored,
            "hnd_censored": self.hnd_censored,
            "lnd_censored": self.lnd_censored,
        }
        for cp, ev in self.ev_by_round.items():
            row[f"ev_{cp}"] = ev
        return row

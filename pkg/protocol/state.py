"""
protocol/state.py – cluster state carried between rounds and round events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from clustering.assignment import ClusterAssignment
from core.errors import ConfigError
from core.network import Network
from core.types import NodeId, Role


class ProtocolKind(str, Enum):
    ISKMEANS           = "iskmeans"
    SOFT_KMEANS_VANILLA = "softkmeans"
    HARD_KMEANS        = "hardkmeans"
    LEACH              = "leach"

    @classmethod
    def parse(cls, value: "str | ProtocolKind") -> "ProtocolKind":
        if isinstance(value, ProtocolKind):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for kind in cls:
            if kind.value == key or kind.name.lower().replace("_", "") == key:
                return kind
        raise ConfigError(f"Unknown protocol '{value}'. Known: {[k.value for k in cls]}")


class EventKind(str, Enum):
    SWITCH  = "SWITCH"
    RESTART = "RESTART"
    DEATH   = "DEATH"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    node_id: NodeId = -1
    cluster: int = -1


@dataclass
class ClusterState:
    """
    ch_lists[v] is cluster v's ordered CH list; ch_lists[v][active_ch_index[v]]
    serves the current round. last_round_ch_energy[v] is that CH's residual
    when it took office; the switch rule compares against it. `direct_ids`
    send straight to the BS (a LEACH round without any elected head).
    """

    assignment: Optional[ClusterAssignment]
    ch_lists: List[List[NodeId]]
    active_ch_index: List[int]
    last_round_ch_energy: List[float]
    direct_ids: List[NodeId] = field(default_factory=list)
    setup_energy: float = 0.0
    warnings: List[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.ch_lists)

    def active_ch(self, v: int) -> Optional[NodeId]:
        if not self.ch_lists[v]:
            return None
        return self.ch_lists[v][self.active_ch_index[v]]

    def members(self, v: int) -> List[NodeId]:
        return self.assignment.clusters[v] if self.assignment is not None else []

    def labels(self, n: int) -> np.ndarray:
        """Cluster index per NodeId, −1 for nodes in no cluster."""
        out = np.full(n, -1, dtype=int)
        if self.assignment is not None:
            out[self.assignment.node_ids] = self.assignment.labels
        return out

    def roles(self, n: int) -> np.ndarray:
        out = np.full(n, int(Role.MEMBER), dtype=np.int8)
        for v, chs in enumerate(self.ch_lists):
            for pos, ch in enumerate(chs):
                out[ch] = int(Role.CLUSTER_HEAD if pos == self.active_ch_index[v] else Role.CANDIDATE_CH)
        return out

    def apply_roles(self, network: Network) -> None:
        network.roles = self.roles(network.n)

    def ch_needs_repair(self, network: Network) -> bool:
        """Some cluster still has alive nodes but its active CH is dead."""
        alive = network.alive
        for v in range(self.k):
            ch = self.active_ch(v)
            if ch is not None and not alive[ch] and any(alive[i] for i in self.members(v)):
                return True
        return False

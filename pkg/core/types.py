"""
core/types.py – value types shared by the simulator packages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

NodeId = int


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


class Role(IntEnum):
    MEMBER = 0
    CLUSTER_HEAD = 1
    CANDIDATE_CH = 2

    @property
    def label(self) -> str:
        return _ROLE_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "Role":
        for role, text in _ROLE_LABELS.items():
            if text.lower() == label.strip().lower():
                return role
        raise ValueError(f"Unknown role '{label}'. Known: {list(_ROLE_LABELS.values())}")


_ROLE_LABELS = {
    Role.MEMBER:       "Member",
    Role.CLUSTER_HEAD: "ClusterHead",
    Role.CANDIDATE_CH: "CandidateCH",
}


@dataclass(frozen=True)
class SensorNode:
    """One simulated device. `alive` always mirrors `energy > 0`."""

    id: NodeId
    position: Point2D
    energy: float
    role: Role = Role.MEMBER

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"node id must be non-negative, got {self.id}")
        if self.energy < 0:
            raise ValueError(f"node {self.id}: negative energy {self.energy}")

    @property
    def alive(self) -> bool:
        return self.energy > 0

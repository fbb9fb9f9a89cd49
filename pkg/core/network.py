"""
core/network.py – array-backed node table.

The simulator debits whole rounds at once, so positions / energies / roles
live in numpy arrays indexed by NodeId. `node(i)` hands out SensorNode views.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError
from .geometry import PointsLike, as_points_array, distances_to
from .types import Point2D, Role, SensorNode


class Network:

    def __init__(
        self,
        positions: PointsLike,
        energy: float | Sequence[float] | np.ndarray,
        bs_position: Point2D,
        roles: Iterable[int] | None = None,
    ):
        self.positions   = as_points_array(positions).copy()
        n                = len(self.positions)
        self.energy      = np.array(np.broadcast_to(np.asarray(energy, dtype=float), (n,)))
        if (self.energy < 0).any():
            raise ParameterError("node energies must be non-negative")
        self.roles       = (np.fromiter(roles, dtype=np.int8, count=n) if roles is not None
                            else np.full(n, int(Role.MEMBER), dtype=np.int8))
        self.bs_position = bs_position
        self.d_to_bs     = distances_to(self.positions, bs_position)

    # ───────────────────────── constructors ──────────────────────────
    @classmethod
    def from_nodes(cls, nodes: Sequence[SensorNode], bs_position: Point2D) -> "Network":
        ids = [nd.id for nd in nodes]
        if ids != list(range(len(nodes))):
            raise ParameterError("node ids must be the dense range 0..n-1 in order")
        return cls(
            positions   = [nd.position for nd in nodes],
            energy      = [nd.energy for nd in nodes],
            bs_position = bs_position,
            roles       = [int(nd.role) for nd in nodes],
        )

    def copy(self) -> "Network":
        return Network(self.positions, self.energy, self.bs_position, self.roles)

    # ───────────────────────── views ─────────────────────────────────
    @property
    def n(self) -> int:
        return len(self.energy)

    @property
    def alive(self) -> np.ndarray:
        return self.energy > 0

    @property
    def alive_count(self) -> int:
        return int(np.count_nonzero(self.energy > 0))

    def alive_ids(self) -> np.ndarray:
        return np.flatnonzero(self.energy > 0)

    def total_energy(self) -> float:
        return float(self.energy.sum())

    def node(self, i: int) -> SensorNode:
        x, y = self.positions[i]
        return SensorNode(
            id       = int(i),
            position = Point2D(float(x), float(y)),
            energy   = float(self.energy[i]),
            role     = Role(int(self.roles[i])),
        )

    def nodes(self) -> list[SensorNode]:
        return [self.node(i) for i in range(self.n)]

    # ───────────────────────── mutation ──────────────────────────────
    def debit(self, amounts: np.ndarray) -> float:
        """
        Subtract per-node amounts, clamping at 0.
        Returns the energy actually removed (clamping accounted for).
        """
        amounts = np.asarray(amounts, dtype=float)
        if amounts.shape != self.energy.shape:
            raise ParameterError(f"debit vector shape {amounts.shape} != {self.energy.shape}")
        if (amounts < 0).any():
            raise ParameterError("debit amounts must be non-negative")
        before      = self.energy
        self.energy = np.maximum(before - amounts, 0.0)
        return float((before - self.energy).sum())

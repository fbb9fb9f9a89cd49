"""
protocol/leach.py – probabilistic self-election baseline.

Every round each alive node that has not served in the current epoch
elects itself with probability

    T(r) = p / (1 − p · (r mod round(1/p))),   p = k / n

and the others join the nearest elected head. A round without any head
has every alive node transmit straight to the BS.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from clustering.assignment import ClusterAssignment
from core.network import Network

from .base import ClusteringProtocol, empty_state, register_protocol
from .state import ClusterState, Event, ProtocolKind

logger = logging.getLogger(__name__)


@register_protocol(ProtocolKind.LEACH)
class LeachProtocol(ClusteringProtocol):
    reclusters_every_round = True

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self.p: Optional[float] = None
        self.epoch: int = 1
        self.round: int = 0
        self._served: Optional[np.ndarray] = None

    def _start(self, network: Network) -> None:
        ids = network.alive_ids()
        k = self.cluster_count(network.positions[ids], ids)
        self.p = min(1.0, k / network.n)
        self.epoch = max(1, int(round(1 / self.p)))
        self._served = np.zeros(network.n, dtype=bool)
        logger.debug("LEACH: k=%d p=%.4f epoch=%d", k, self.p, self.epoch)

    def threshold(self, r: int) -> float:
        denom = 1 - self.p * (r % self.epoch)
        if denom <= self.p:
            return 1.0
        return min(1.0, self.p / denom)

    def form_state(self, network: Network) -> ClusterState:
        ids = network.alive_ids()
        if self.p is None:
            if len(ids) == 0:
                return empty_state()
            self._start(network)
        r = self.round
        self.round += 1
        if r % self.epoch == 0:
            self._served[:] = False

        # one draw per deployed node keeps the stream independent of deaths
        draws = self.rng.random(network.n)
        alive = network.alive
        heads = np.flatnonzero(alive & ~self._served & (draws < self.threshold(r)))
        self._served[heads] = True

        if len(ids) == 0:
            return empty_state()
        if len(heads) == 0:
            state = empty_state()
            state.direct_ids = ids.tolist()
            return state

        pos = network.positions
        d = np.hypot(pos[ids, None, 0] - pos[None, heads, 0], pos[ids, None, 1] - pos[None, heads, 1])
        labels = np.argmin(d, axis=1)
        labels[np.isin(ids, heads)] = np.searchsorted(heads, ids[np.isin(ids, heads)])
        assignment = ClusterAssignment(labels=labels, node_ids=ids, centers=pos[heads])
        return ClusterState(
            assignment           = assignment,
            ch_lists             = [[int(h)] for h in heads],
            active_ch_index      = [0] * len(heads),
            last_round_ch_energy = network.energy[heads].tolist(),
        )

    def after_round(self, state: ClusterState, network: Network) -> Tuple[ClusterState, List[Event]]:
        return state, []

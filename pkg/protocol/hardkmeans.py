"""
protocol/hardkmeans.py – Lloyd clustering from random seeds, one fixed
cluster head per cluster (the alive member nearest the centroid).

There is no rotation: the set-up phase is re-run only once an active
cluster head has died.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from clustering.hard_kmeans import hard_kmeans
from core.network import Network

from .base import ClusteringProtocol, empty_state, register_protocol, single_node_state
from .state import ClusterState, Event, EventKind, ProtocolKind


@register_protocol(ProtocolKind.HARD_KMEANS)
class HardKMeansProtocol(ClusteringProtocol):

    def form_state(self, network: Network) -> ClusterState:
        ids = network.alive_ids()
        if len(ids) == 0:
            return empty_state()
        if len(ids) == 1:
            return single_node_state(int(ids[0]), network)

        x = network.positions[ids]
        k = self.cluster_count(x, ids)
        assignment = hard_kmeans(x, self.random_centers(x, k), self.cfg.convergence_eps,
                                 self.cfg.r_max, node_ids=ids)

        ch_lists = []
        for v, members in enumerate(assignment.clusters):
            members = np.asarray(members)
            d = np.hypot(*(network.positions[members] - assignment.centers[v]).T)
            ch_lists.append([int(members[np.lexsort((members, d))[0]])])

        return ClusterState(
            assignment           = assignment,
            ch_lists             = ch_lists,
            active_ch_index      = [0] * len(ch_lists),
            last_round_ch_energy = [float(network.energy[chs[0]]) for chs in ch_lists],
        )

    def after_round(self, state: ClusterState, network: Network) -> Tuple[ClusterState, List[Event]]:
        alive = network.alive
        events = [
            Event(EventKind.RESTART, node_id=chs[0], cluster=v)
            for v, chs in enumerate(state.ch_lists)
            if chs and not alive[chs[0]] and any(alive[i] for i in state.members(v))
        ]
        return state, events

"""
protocol/vanilla.py – plain soft k-means: random alive-node seeds, no
boundary reassignment, one cluster head per cluster.
"""

from __future__ import annotations

import logging

from clustering.hard_kmeans import hard_kmeans
from clustering.soft_kmeans import form_clusters, soft_kmeans
from core.errors import DegenerateClusterError
from core.network import Network

from .base import ClusteringProtocol, empty_state, register_protocol, single_node_state
from .chs import select_multi_chs
from .state import ClusterState, ProtocolKind

logger = logging.getLogger(__name__)

SEED_ATTEMPTS = 3


@register_protocol(ProtocolKind.SOFT_KMEANS_VANILLA)
class SoftKMeansVanillaProtocol(ClusteringProtocol):

    def form_state(self, network: Network) -> ClusterState:
        ids = network.alive_ids()
        if len(ids) == 0:
            return empty_state()
        if len(ids) == 1:
            return single_node_state(int(ids[0]), network)

        x = network.positions[ids]
        k = self.cluster_count(x, ids)
        assignment = None
        for _ in range(SEED_ATTEMPTS):
            init = self.random_centers(x, k)
            try:
                res = soft_kmeans(x, init, self.cfg.beta, self.cfg.convergence_eps, self.cfg.r_max)
                assignment = form_clusters(res.z, ids, res.centers, drop_empty=True)
                break
            except DegenerateClusterError as exc:
                logger.info("vanilla soft k-means degenerated (%s); drawing new seeds", exc)
        if assignment is None:
            self._warn("vanilla soft k-means degenerated for every random seeding; using Lloyd iterations")
            assignment = hard_kmeans(x, init, self.cfg.convergence_eps, self.cfg.r_max, node_ids=ids)

        return select_multi_chs(assignment, network, self.cfg.ch_constant, max_slots=1)

"""
protocol/iskmeans.py – density-seeded soft k-means with boundary
reassignment and multiple cluster heads per cluster.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from clustering.assignment import ClusterAssignment
from clustering.hard_kmeans import hard_kmeans
from clustering.reassign import reassign_boundary
from clustering.soft_kmeans import MembershipMatrix, SoftKMeansResult, form_clusters, soft_kmeans
from core.errors import DegenerateClusterError
from core.network import Network
from density.centers import CenterSelection, select_initial_centers

from .base import ClusteringProtocol, empty_state, register_protocol, single_node_state
from .chs import select_multi_chs
from .state import ClusterState, ProtocolKind

logger = logging.getLogger(__name__)

Attempt = Tuple[CenterSelection, Optional[SoftKMeansResult], Optional[ClusterAssignment]]


@register_protocol(ProtocolKind.ISKMEANS)
class ISKMeansProtocol(ClusteringProtocol):

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        other = "cutoff" if self.cfg.density_method == "kde" else "kde"
        self._seed_configs = [self.cfg, self.cfg.replace(density_method=other)]

    # ------------------------------------------------------------------ steps
    def _attempt(self, x: np.ndarray, ids: np.ndarray, cfg, forced_k: Optional[int]) -> Attempt:
        sel = select_initial_centers(x, cfg, forced_k, node_ids=ids)
        for msg in sel.warnings:
            if msg not in self.warnings:
                self.warnings.append(msg)
        try:
            res = soft_kmeans(x, sel.as_array(), cfg.beta, cfg.convergence_eps, cfg.r_max)
        except DegenerateClusterError as exc:
            logger.info("soft k-means degenerated (%s)", exc)
            return sel, None, None
        try:
            return sel, res, form_clusters(res.z, ids, res.centers)
        except DegenerateClusterError as exc:
            logger.info("soft k-means left an empty cluster (%s)", exc)
            return sel, res, None

    def cluster(self, x: np.ndarray, ids: np.ndarray) -> Tuple[ClusterAssignment, Optional[MembershipMatrix]]:
        """
        Seed with the configured density, re-seed once with the other
        density variant when the first run fails or does not converge, and
        keep the lowest-cost usable result.
        """
        forced = self.cfg.forced_k
        if forced is not None and forced > len(ids):
            self._warn(f"only {len(ids)} alive nodes for k={forced}; using k={len(ids)}")
            forced = len(ids)

        attempts: List[Attempt] = []
        for number, cfg in enumerate(self._seed_configs):
            if number:
                logger.info("re-seeding initial centers with density_method=%s", cfg.density_method)
            attempt = self._attempt(x, ids, cfg, forced)
            attempts.append(attempt)
            if attempt[2] is not None and attempt[1].converged:
                break

        usable = [(res, asg) for _, res, asg in attempts if asg is not None]
        if usable:
            res, asg = min(usable, key=lambda ra: ra[0].final_cost)
            return asg, res.z

        with_z = [res for _, res, _ in attempts if res is not None]
        if with_z:
            res = min(with_z, key=lambda r: r.final_cost)
            asg = form_clusters(res.z, ids, res.centers, drop_empty=True)
            self._warn(f"soft k-means kept {asg.k} of {res.z.k} clusters after empty-cluster recovery")
            keep = np.unique(np.argmax(res.z.z, axis=0))
            z = res.z.z[keep]
            return asg, MembershipMatrix(z / z.sum(axis=0, keepdims=True))

        self._warn("soft k-means degenerated for every seeding; falling back to Lloyd iterations")
        sel = attempts[0][0]
        return hard_kmeans(x, sel.as_array(), self.cfg.convergence_eps, self.cfg.r_max, node_ids=ids), None

    # ------------------------------------------------------------------ hook
    def form_state(self, network: Network) -> ClusterState:
        ids = network.alive_ids()
        if len(ids) == 0:
            return empty_state()
        if len(ids) == 1:
            return single_node_state(int(ids[0]), network)

        x = network.positions[ids]
        assignment, z = self.cluster(x, ids)
        if z is not None:
            before = assignment.sizes().tolist()
            assignment = reassign_boundary(assignment, z, self.cfg.reassign_threshold)
            logger.debug("cluster sizes %s -> %s after reassignment", before, assignment.sizes().tolist())
        return select_multi_chs(assignment, network, self.cfg.ch_constant)

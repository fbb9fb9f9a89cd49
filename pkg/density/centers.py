"""
density/centers.py – initial cluster centers and cluster count.

Steps:
  1. ρ for every node (KDE by default, neighbour count when
     density_method = cutoff)
  2. keep the nodes whose ρ is maximal within d_c of themselves
  3. δ and γ = ρ·δ over that restricted set
  4. top-k by γ, k forced or taken at the largest ratio γ_(j)/γ_(j+1)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from core.config import NetworkConfig
from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array, pairwise_distances, to_points
from core.types import NodeId, Point2D

from .peaks import DensityProfile, _ids, delta_distances, node_density, select_cutoff_dc

logger = logging.getLogger(__name__)


@dataclass
class CenterSelection:
    centers: List[Point2D]
    center_ids: List[NodeId]
    profile: Optional[DensityProfile] = None
    candidate_ids: List[NodeId] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.centers)

    def as_array(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.centers], dtype=float)


def _top_by_gamma(gamma: np.ndarray, ids: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest γ, ties to the lower node id."""
    return np.lexsort((ids, -gamma))[:k]


def knee_k(gamma_desc: np.ndarray, n: int) -> int:
    """
    Cluster count at the largest ratio between consecutive sorted γ values,
    scanning j = 1 .. min(m − 1, ⌈n/5⌉); ties go to the smaller k.
    """
    m = len(gamma_desc)
    limit = min(m - 1, math.ceil(n / 5))
    if limit < 1:
        return 1
    best_k, best_ratio = 1, -1.0
    for j in range(1, limit + 1):
        hi, lo = gamma_desc[j - 1], gamma_desc[j]
        if lo > 0:
            ratio = hi / lo
        else:
            ratio = math.inf if hi > 0 else 1.0
        if ratio > best_ratio:
            best_k, best_ratio = j, ratio
    return best_k


def select_initial_centers(
    nodes: PointsLike,
    config: NetworkConfig,
    forced_k: Optional[int] = None,
    *,
    node_ids: Optional[Sequence[int]] = None,
) -> CenterSelection:
    x = as_points_array(nodes)
    n = len(x)
    if n == 0:
        raise ParameterError("center selection needs at least one node")
    ids = _ids(n, node_ids)
    if forced_k is not None and forced_k < 1:
        raise ParameterError(f"forced_k must be >= 1, got {forced_k}")

    warnings: List[str] = []
    d = pairwise_distances(x)
    if n == 1 or d.max() == 0:
        rho = np.ones(n)
        profile = DensityProfile.build(ids[:1], rho[:1], np.zeros(1))
        if n > 1 and (forced_k or 1) > 1:
            warnings.append(f"all {n} nodes coincide; using a single center")
        return CenterSelection(to_points(x[:1]), [int(ids[0])], profile, [int(ids[0])], warnings)

    rho = node_density(x, config)
    d_c = select_cutoff_dc(x, config.dc_neighbor_fraction)

    # local maxima within d_c (the node itself is excluded from its neighbourhood)
    near = d < d_c
    np.fill_diagonal(near, False)
    dominated = near & (rho[None, :] > rho[:, None])
    cand = np.flatnonzero(~dominated.any(axis=1))

    delta_c = delta_distances(x[cand], rho[cand], ids[cand])
    profile = DensityProfile.build(ids[cand], rho[cand], delta_c)
    m = len(cand)

    if forced_k is not None:
        k = forced_k
        if k > n:
            warnings.append(f"forced_k={forced_k} exceeds the {n} available nodes; using k={n}")
            k = n
        if k > m:
            warnings.append(f"forced_k={k} exceeds the {m} local density peaks; ranking all nodes by gamma")
            gamma_all = rho * delta_distances(x, rho, ids)
            chosen = _top_by_gamma(gamma_all, ids, k)
        else:
            chosen = cand[_top_by_gamma(profile.gamma, ids[cand], k)]
    else:
        order = _top_by_gamma(profile.gamma, ids[cand], m)
        k = knee_k(profile.gamma[order], n)
        chosen = cand[order[:k]]

    for msg in warnings:
        logger.warning(msg)
    logger.debug("density peaks: n=%d d_c=%.3f m=%d k=%d", n, d_c, m, len(chosen))
    return CenterSelection(
        centers       = to_points(x[chosen]),
        center_ids    = [int(i) for i in ids[chosen]],
        profile       = profile,
        candidate_ids = [int(i) for i in ids[cand]],
        warnings      = warnings,
    )

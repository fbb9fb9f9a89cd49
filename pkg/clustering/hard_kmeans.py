"""
clustering/hard_kmeans.py – Lloyd baseline on top of scikit-learn.

KMeans with an explicit init and n_init = 1 is deterministic given its
inputs; an empty cluster is re-seeded at the point farthest from its
assigned center.
"""

from __future__ import annotations

import logging
import warnings
from typing import Optional, Sequence

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array

from .assignment import ClusterAssignment, default_ids

logger = logging.getLogger(__name__)


def hard_kmeans(
    nodes: PointsLike,
    initial_centers: PointsLike,
    convergence_eps: float,
    r_max: int,
    *,
    node_ids: Optional[Sequence[int]] = None,
) -> ClusterAssignment:
    if r_max < 1:
        raise ParameterError(f"r_max must be >= 1, got {r_max}")
    x = as_points_array(nodes)
    init = as_points_array(initial_centers)
    k = len(init)
    if not 1 <= k <= len(x):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={len(x)}")
    ids = default_ids(len(x), node_ids)

    km = KMeans(
        n_clusters = k,
        init       = init,
        n_init     = 1,
        max_iter   = r_max,
        tol        = convergence_eps,
        algorithm  = "lloyd",
    )
    with warnings.catch_warnings():
        # duplicate points can leave fewer distinct clusters than k
        warnings.simplefilter("ignore", ConvergenceWarning)
        km.fit(x)

    assignment, dropped = ClusterAssignment.compact(km.labels_, ids, km.cluster_centers_)
    if dropped:
        logger.warning("k-means left clusters %s empty; continuing with k=%d", dropped, assignment.k)
    return assignment

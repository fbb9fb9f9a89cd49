"""
clustering/soft_kmeans.py – soft k-means with β-stiffness.

    z_vj = exp(−β‖x_j − μ_v‖²) / Σ_l exp(−β‖x_j − μ_l‖²)
    μ_v  = Σ_j z_vj x_j / Σ_j z_vj
    J    = Σ_v Σ_j z_vj ‖x_j − μ_v‖²

The iteration descends the free energy F = J + (1/β) Σ z ln z; J alone can
rise when memberships are refreshed, so both are traced.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DegenerateClusterError, ParameterError
from core.geometry import PointsLike, as_points_array, squared_distances

from .assignment import ClusterAssignment, default_ids

logger = logging.getLogger(__name__)

COLUMN_SUM_TOL = 1e-9


@dataclass
class MembershipMatrix:
    z: np.ndarray

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float)
        if self.z.ndim != 2:
            raise ParameterError(f"membership matrix must be 2-D, got shape {self.z.shape}")

    @property
    def k(self) -> int:
        return self.z.shape[0]

    @property
    def n(self) -> int:
        return self.z.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.z[:, j]

    def check(self) -> None:
        """Entries in [0, 1], columns summing to 1, rows with positive mass."""
        if ((self.z < 0) | (self.z > 1)).any():
            raise ParameterError("membership entries outside [0, 1]")
        if self.n and np.abs(self.z.sum(axis=0) - 1).max() > COLUMN_SUM_TOL:
            raise ParameterError("membership columns do not sum to 1")
        if self.n and (self.z.sum(axis=1) <= 0).any():
            raise DegenerateClusterError("membership row with zero total weight")


@dataclass
class SoftKMeansResult:
    z: MembershipMatrix
    centers: np.ndarray
    iterations: int
    converged: bool
    cost_trace: List[Tuple[float, float]] = field(default_factory=list)
    free_energy_trace: List[float] = field(default_factory=list)

    @property
    def final_cost(self) -> float:
        return self.cost_trace[-1][1] if self.cost_trace else float("nan")

    def __iter__(self):
        return iter((self.z, self.centers, self.iterations, self.converged))


def softmax_membership(sq_dist: np.ndarray, beta: float) -> MembershipMatrix:
    """Column softmax of −β·d²; the per-column maximum is subtracted first."""
    if not beta > 0:
        raise ParameterError(f"beta must be > 0, got {beta}")
    sq = np.asarray(sq_dist, dtype=float)
    if sq.ndim != 2 or sq.shape[0] < 1:
        raise ParameterError(f"need at least one center, got distance matrix of shape {sq.shape}")
    logits = -beta * sq
    logits -= logits.max(axis=0, keepdims=True)
    w = np.exp(logits)
    return MembershipMatrix(w / w.sum(axis=0, keepdims=True))


def membership(nodes: PointsLike, centers: PointsLike, beta: float) -> MembershipMatrix:
    return softmax_membership(squared_distances(nodes, centers), beta)


def update_centers(nodes: PointsLike, z: MembershipMatrix) -> np.ndarray:
    x = as_points_array(nodes)
    w = z.z.sum(axis=1)
    empty = np.flatnonzero(w <= 0)
    if len(empty):
        raise DegenerateClusterError(f"clusters {empty.tolist()} have zero membership weight")
    return (z.z @ x) / w[:, None]


def cost(nodes: PointsLike, z: MembershipMatrix, centers: PointsLike) -> float:
    return float((z.z * squared_distances(nodes, centers)).sum())


def free_energy(nodes: PointsLike, z: MembershipMatrix, centers: PointsLike, beta: float) -> float:
    zz = z.z
    entropy_term = float((zz * np.log(np.where(zz > 0, zz, 1.0))).sum())
    return cost(nodes, z, centers) + entropy_term / beta


def soft_kmeans(
    nodes: PointsLike,
    initial_centers: PointsLike,
    beta: float,
    convergence_eps: float,
    r_max: int,
) -> SoftKMeansResult:
    """
    Alternate center updates and membership refreshes until both the
    membership change and the center displacement drop below
    `convergence_eps`, or `r_max` iterations have run.
    """
    if r_max < 1:
        raise ParameterError(f"r_max must be >= 1, got {r_max}")
    x = as_points_array(nodes)
    mu = as_points_array(initial_centers).copy()
    z = membership(x, mu, beta)

    cost_trace: List[Tuple[float, float]] = []
    fe_trace: List[float] = []
    converged = False
    it = 0
    for it in range(1, r_max + 1):
        new_mu = update_centers(x, z)
        cost_trace.append((cost(x, z, mu), cost(x, z, new_mu)))
        fe_trace.append(free_energy(x, z, new_mu, beta))

        new_z = membership(x, new_mu, beta)
        dz = float(np.abs(new_z.z - z.z).max()) if x.size else 0.0
        shift = float(np.hypot(*(new_mu - mu).T).max())
        mu, z = new_mu, new_z
        if dz < convergence_eps and shift < convergence_eps:
            converged = True
            break

    logger.debug("soft k-means: k=%d n=%d iterations=%d converged=%s", len(mu), len(x), it, converged)
    return SoftKMeansResult(z, mu, it, converged, cost_trace, fe_trace)


def form_clusters(
    z: MembershipMatrix,
    node_ids: Optional[Sequence[int]] = None,
    centers: Optional[PointsLike] = None,
    *,
    drop_empty: bool = False,
) -> ClusterAssignment:
    """
    Argmax of each column (ties to the lowest cluster index). An empty
    cluster raises DegenerateClusterError unless `drop_empty` is set.
    """
    labels = np.argmax(z.z, axis=0)
    ids = default_ids(z.n, node_ids)
    mu = np.zeros((z.k, 2)) if centers is None else as_points_array(centers)
    if drop_empty:
        assignment, dropped = ClusterAssignment.compact(labels, ids, mu)
        if dropped:
            logger.warning("dropped empty clusters %s after argmax assignment", dropped)
        return assignment
    return ClusterAssignment(labels=labels, node_ids=ids, centers=mu)


def top_two_gap(z: MembershipMatrix) -> np.ndarray:
    """Per node: largest minus second largest probability (1 when k = 1)."""
    if z.k < 2:
        return np.ones(z.n)
    part = -np.sort(-z.z, axis=0)
    return part[0] - part[1]


def boundary_nodes(z: MembershipMatrix, threshold: float) -> np.ndarray:
    """Column indices whose top-two probability gap is below `threshold`."""
    return np.flatnonzero(top_two_gap(z) < threshold)

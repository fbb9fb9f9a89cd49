"""
density/peaks.py – density-peaks quantities.

    ρ_i   local density (neighbour count within d_c, or KDE value)
    δ_i   distance to the nearest node ranked denser; the densest node
          gets the largest pairwise distance instead
    γ_i   ρ_i · δ_i

Density rank is (−ρ, NodeId): equal densities are ordered by lower id, so
every node except the first one has a non-empty denser set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from core.config import NetworkConfig
from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array, pairwise_distances

from .kde import local_density_kde, resolve_bandwidth


@dataclass
class DensityProfile:
    node_ids: np.ndarray
    rho: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray

    @classmethod
    def build(cls, node_ids: np.ndarray, rho: np.ndarray, delta: np.ndarray) -> "DensityProfile":
        return cls(node_ids=np.asarray(node_ids), rho=rho, delta=delta, gamma=rho * delta)

    def __len__(self) -> int:
        return len(self.rho)


def _ids(n: int, node_ids: Optional[Sequence[int]]) -> np.ndarray:
    if node_ids is None:
        return np.arange(n)
    ids = np.asarray(node_ids)
    if len(ids) != n:
        raise ParameterError(f"{len(ids)} node ids for {n} nodes")
    return ids


def density_rank(rho: np.ndarray, node_ids: np.ndarray) -> np.ndarray:
    """Position of each node in the (−ρ, id) order; 0 = densest."""
    order = np.lexsort((node_ids, -rho))
    rank = np.empty(len(rho), dtype=int)
    rank[order] = np.arange(len(rho))
    return rank


def local_density_cutoff(nodes: PointsLike, d_c: float) -> np.ndarray:
    if not d_c > 0:
        raise ParameterError(f"cutoff distance must be > 0, got {d_c}")
    d = pairwise_distances(nodes)
    within = d < d_c
    np.fill_diagonal(within, False)
    return within.sum(axis=1).astype(float)


def select_cutoff_dc(nodes: PointsLike, neighbor_fraction: float) -> float:
    """
    Cutoff distance giving on average `neighbor_fraction · n` neighbours.

    Needs j = ⌈fraction·n²/2⌉ pairs strictly inside d_c; d_c is placed
    half-way between the j-th smallest pair distance and the next larger
    distinct one.
    """
    x = as_points_array(nodes)
    n = len(x)
    if n < 2:
        raise ParameterError(f"cutoff selection needs at least 2 nodes, got {n}")
    if not 0 < neighbor_fraction < 1:
        raise ParameterError(f"neighbor_fraction must be in (0, 1), got {neighbor_fraction}")

    iu = np.triu_indices(n, k=1)
    pairs = np.sort(pairwise_distances(x)[iu])
    top = pairs[-1]
    if top == 0:
        raise ParameterError("all nodes coincide; no cutoff distance exists")

    needed = math.ceil(neighbor_fraction * n * n / 2.0 - 1e-9)
    if needed >= len(pairs):
        return top * (1 + 1e-9)
    edge = pairs[needed - 1]
    nxt = np.searchsorted(pairs, edge, side="right")
    if nxt >= len(pairs):
        return top * (1 + 1e-9)
    return float((edge + pairs[nxt]) / 2.0)


def delta_distances(nodes: PointsLike, rho: np.ndarray, node_ids: Optional[Sequence[int]] = None) -> np.ndarray:
    x = as_points_array(nodes)
    rho = np.asarray(rho, dtype=float)
    n = len(x)
    if len(rho) != n:
        raise ParameterError(f"rho has {len(rho)} entries for {n} nodes")
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return np.zeros(1)

    ids = _ids(n, node_ids)
    d = pairwise_distances(x)
    rank = density_rank(rho, ids)
    denser = rank[None, :] < rank[:, None]
    delta = np.where(denser, d, np.inf).min(axis=1)
    delta[rank == 0] = d.max()
    return delta


def decision_graph(nodes: PointsLike, config: NetworkConfig, node_ids: Optional[Sequence[int]] = None) -> DensityProfile:
    """(ρ, δ, γ) for every node, without the local-maximum restriction."""
    x = as_points_array(nodes)
    ids = _ids(len(x), node_ids)
    rho = node_density(x, config)
    return DensityProfile.build(ids, rho, delta_distances(x, rho, ids))


def node_density(x: np.ndarray, config: NetworkConfig) -> np.ndarray:
    if len(x) == 1:
        return local_density_kde(x, resolve_bandwidth(x, config)) if config.density_method == "kde" else np.zeros(1)
    if config.density_method == "cutoff":
        return local_density_cutoff(x, select_cutoff_dc(x, config.dc_neighbor_fraction))
    return local_density_kde(x, resolve_bandwidth(x, config))

"""
clustering/assignment.py – crisp partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from core.errors import DegenerateClusterError, ParameterError
from core.types import NodeId


@dataclass
class ClusterAssignment:
    """
    labels[j] is the cluster index of column j; node_ids[j] its NodeId.
    centers is a (k, 2) array. Every cluster holds at least one node.
    """

    labels: np.ndarray
    node_ids: np.ndarray
    centers: np.ndarray

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=int)
        self.node_ids = np.asarray(self.node_ids, dtype=int)
        self.centers = np.asarray(self.centers, dtype=float).reshape(-1, 2)
        if self.labels.shape != self.node_ids.shape:
            raise ParameterError(f"{len(self.labels)} labels for {len(self.node_ids)} nodes")
        if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= self.k):
            raise ParameterError(f"labels outside 0..{self.k - 1}")
        empty = np.flatnonzero(self.sizes() == 0)
        if len(empty):
            raise DegenerateClusterError(f"empty clusters {empty.tolist()}")

    @property
    def k(self) -> int:
        return len(self.centers)

    @property
    def clusters(self) -> List[List[NodeId]]:
        return [self.node_ids[self.labels == v].tolist() for v in range(self.k)]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def size_ratio(self) -> float:
        sizes = self.sizes()
        return float(sizes.max() / sizes.min())

    def label_of(self) -> dict[NodeId, int]:
        return dict(zip(self.node_ids.tolist(), self.labels.tolist()))

    def with_labels(self, labels: np.ndarray) -> "ClusterAssignment":
        return ClusterAssignment(labels=labels, node_ids=self.node_ids.copy(), centers=self.centers.copy())

    @classmethod
    def compact(
        cls,
        labels: np.ndarray,
        node_ids: Sequence[int],
        centers: np.ndarray,
    ) -> tuple["ClusterAssignment", list[int]]:
        """Drop empty clusters and renumber; returns the dropped indices too."""
        labels = np.asarray(labels, dtype=int)
        centers = np.asarray(centers, dtype=float).reshape(-1, 2)
        used = np.bincount(labels, minlength=len(centers)) > 0
        remap = np.cumsum(used) - 1
        dropped = np.flatnonzero(~used).tolist()
        return cls(labels=remap[labels], node_ids=np.asarray(node_ids), centers=centers[used]), dropped


def default_ids(n: int, node_ids: Optional[Sequence[int]]) -> np.ndarray:
    if node_ids is None:
        return np.arange(n)
    ids = np.asarray(node_ids, dtype=int)
    if len(ids) != n:
        raise ParameterError(f"{len(ids)} node ids for {n} nodes")
    return ids

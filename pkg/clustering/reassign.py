"""
clustering/reassign.py – boundary-node reassignment.

A node whose two largest membership probabilities differ by less than the
threshold moves from the larger of those two clusters to the smaller one.
Sizes are live member counts. A move must shrink the size gap (sizes
differ by at least 2), so no move is ever undone by a later one.
"""

from __future__ import annotations

import logging

import numpy as np

from core.errors import ParameterError

from .assignment import ClusterAssignment
from .soft_kmeans import MembershipMatrix

logger = logging.getLogger(__name__)


def _top_two(column: np.ndarray) -> tuple[int, int]:
    order = np.lexsort((np.arange(len(column)), -column))
    return int(order[0]), int(order[1])


def reassign_boundary(
    assignment: ClusterAssignment,
    z: MembershipMatrix,
    threshold: float,
) -> ClusterAssignment:
    """
    Sweeps nodes in ascending NodeId order until a sweep moves nothing.
    With two clusters the second sweep never moves anything.
    """
    if not 0 <= threshold <= 1:
        raise ParameterError(f"reassign threshold must be in [0, 1], got {threshold}")
    if z.n != len(assignment.labels) or z.k != assignment.k:
        raise ParameterError(f"membership shape {z.z.shape} does not match assignment "
                             f"(k={assignment.k}, n={len(assignment.labels)})")
    if assignment.k < 2 or threshold == 0:
        return assignment.with_labels(assignment.labels.copy())

    labels = assignment.labels.copy()
    sizes = np.bincount(labels, minlength=assignment.k)
    order = np.argsort(assignment.node_ids, kind="stable")
    gap_ok = np.empty(z.n, dtype=bool)
    pairs = []
    for j in range(z.n):
        first, second = _top_two(z.z[:, j])
        pairs.append((first, second))
        gap_ok[j] = z.z[first, j] - z.z[second, j] < threshold

    moves = 0
    moved = True
    while moved:
        moved = False
        for j in order:
            if not gap_ok[j]:
                continue
            first, second = pairs[j]
            cur = labels[j]
            if cur not in (first, second):
                continue
            other = second if cur == first else first
            if sizes[cur] >= sizes[other] + 2:
                labels[j] = other
                sizes[cur] -= 1
                sizes[other] += 1
                moves += 1
                moved = True

    if moves:
        logger.debug("reassigned %d boundary nodes; sizes now %s", moves, sizes.tolist())
    return assignment.with_labels(labels)

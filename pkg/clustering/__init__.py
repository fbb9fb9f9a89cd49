from .assignment import ClusterAssignment
from .hard_kmeans import hard_kmeans
from .reassign import reassign_boundary
from .soft_kmeans import (
    MembershipMatrix,
    SoftKMeansResult,
    boundary_nodes,
    cost,
    form_clusters,
    free_energy,
    membership,
    soft_kmeans,
    softmax_membership,
    top_two_gap,
    update_centers,
)

__all__ = [
    "ClusterAssignment", "hard_kmeans", "reassign_boundary",
    "MembershipMatrix", "SoftKMeansResult", "boundary_nodes", "cost",
    "form_clusters", "free_energy", "membership", "soft_kmeans",
    "softmax_membership", "top_two_gap", "update_centers",
]

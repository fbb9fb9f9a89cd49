from .centers import CenterSelection, knee_k, select_initial_centers
from .kde import kde_pdf, local_density_kde, resolve_bandwidth, silverman_bandwidth
from .peaks import (
    DensityProfile,
    decision_graph,
    delta_distances,
    local_density_cutoff,
    select_cutoff_dc,
)

__all__ = [
    "CenterSelection", "knee_k", "select_initial_centers",
    "kde_pdf", "local_density_kde", "resolve_bandwidth", "silverman_bandwidth",
    "DensityProfile", "decision_graph", "delta_distances",
    "local_density_cutoff", "select_cutoff_dc",
]

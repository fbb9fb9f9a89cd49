"""
density/kde.py – Gaussian kernel density over node layouts.

    f(x) = 1/(n·h²) Σ_t K((x_t − x)/h),   K = product of two standard normals

scikit-learn's KernelDensity with an isotropic Gaussian kernel evaluates
exactly this (atol = rtol = 0, so no tree approximation).
"""

from __future__ import annotations

import logging
from typing import Union

import numpy as np
from sklearn.neighbors import KernelDensity

from core.config import NetworkConfig
from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array
from core.types import Point2D

logger = logging.getLogger(__name__)

FALLBACK_BANDWIDTH = 1.0


def _fit(points: np.ndarray, bandwidth: float) -> KernelDensity:
    if not bandwidth > 0:
        raise ParameterError(f"KDE bandwidth must be > 0, got {bandwidth}")
    if len(points) == 0:
        raise ParameterError("KDE needs at least one sample point")
    return KernelDensity(kernel="gaussian", bandwidth=float(bandwidth)).fit(points)


def kde_pdf(query: Union[Point2D, PointsLike], points: PointsLike, bandwidth: float):
    """Density at one query point (float) or at each of several (array)."""
    x = as_points_array(points)
    single = isinstance(query, Point2D)
    q = as_points_array([query] if single else query)
    values = np.exp(_fit(x, bandwidth).score_samples(q))
    return float(values[0]) if single else values


def local_density_kde(nodes: PointsLike, bandwidth: float) -> np.ndarray:
    x = as_points_array(nodes)
    return np.exp(_fit(x, bandwidth).score_samples(x))


def silverman_bandwidth(nodes: PointsLike) -> float:
    """
    Rule-of-thumb bandwidth for d = 2: mean per-axis sample std · n^(−1/6).
    Falls back to 1 m when the spread is undefined (n < 2 or coincident nodes).
    """
    x = as_points_array(nodes)
    n = len(x)
    if n < 2:
        return FALLBACK_BANDWIDTH
    sigma = float(np.mean(np.std(x, axis=0, ddof=1)))
    if sigma <= 0:
        logger.warning("Silverman bandwidth undefined for coincident nodes; using %.1f m", FALLBACK_BANDWIDTH)
        return FALLBACK_BANDWIDTH
    return sigma * n ** (-1.0 / 6.0)


def resolve_bandwidth(nodes: PointsLike, config: NetworkConfig) -> float:
    if config.kde_bandwidth == "auto":
        return silverman_bandwidth(nodes)
    return float(config.kde_bandwidth)

"""
core/geometry.py – planar Euclidean helpers.

`distance` is the scalar metric; the array helpers are what the density,
clustering and protocol code use on whole layouts.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

from .types import Point2D

PointsLike = Union[Sequence[Point2D], np.ndarray]


def distance(a: Point2D, b: Point2D) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def as_points_array(points: PointsLike) -> np.ndarray:
    """
    Normalise a layout to a float (n, 2) array.

    Accepts a sequence of Point2D, a sequence of (x, y) pairs or an array.
    """
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        arr = np.array(
            [(p.x, p.y) if isinstance(p, Point2D) else tuple(p) for p in points],
            dtype=float,
        )
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) layout, got shape {arr.shape}")
    return arr


def pairwise_distances(points: PointsLike) -> np.ndarray:
    """(n, n) matrix of Euclidean distances."""
    x = as_points_array(points)
    diff = x[:, None, :] - x[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def distances_to(points: PointsLike, target: Point2D | np.ndarray) -> np.ndarray:
    """Distance of every point to a single target."""
    x = as_points_array(points)
    t = np.asarray((target.x, target.y) if isinstance(target, Point2D) else target, dtype=float)
    return np.hypot(x[:, 0] - t[0], x[:, 1] - t[1])


def squared_distances(points: PointsLike, centers: PointsLike) -> np.ndarray:
    """(k, n) matrix of squared distances, row v = center v."""
    x = as_points_array(points)
    m = as_points_array(centers)
    diff = m[:, None, :] - x[None, :, :]
    return np.einsum("knd,knd->kn", diff, diff)


def to_points(arr: np.ndarray) -> list[Point2D]:
    return [Point2D(float(x), float(y)) for x, y in np.asarray(arr, dtype=float)]

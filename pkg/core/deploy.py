"""
core/deploy.py – node deployment.

Layouts are drawn from the `layout` stream of the run seed only, so every
protocol simulated with the same seed sees the same field.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .config import NetworkConfig
from .errors import ConfigError
from .geometry import PointsLike, as_points_array
from .network import Network
from .rng import rng_streams
from .types import Point2D, SensorNode


def uniform_positions(config: NetworkConfig, rng: np.random.Generator) -> np.ndarray:
    if config.area_width <= 0 or config.area_height <= 0:
        raise ConfigError(f"zero-area deployment rectangle {config.area_width}x{config.area_height}")
    if config.n_nodes < 1:
        raise ConfigError(f"n_nodes must be >= 1, got {config.n_nodes}")
    return rng.uniform(
        low  = (0.0, 0.0),
        high = (config.area_width, config.area_height),
        size = (config.n_nodes, 2),
    )


def deploy_uniform(config: NetworkConfig, seed: int) -> list[SensorNode]:
    positions = uniform_positions(config, rng_streams(seed).layout)
    return [
        SensorNode(id=i, position=Point2D(float(x), float(y)), energy=config.initial_energy)
        for i, (x, y) in enumerate(positions)
    ]


def deploy_network(config: NetworkConfig, seed: int, layout: Optional[PointsLike] = None) -> Network:
    """Fresh network at full energy; `layout` replaces the seeded draw when given."""
    if layout is None:
        positions = uniform_positions(config, rng_streams(seed).layout)
    else:
        positions = as_points_array(layout)
        if len(positions) != config.n_nodes:
            raise ConfigError(f"layout has {len(positions)} nodes but n_nodes = {config.n_nodes}")
    return Network(positions, config.initial_energy, config.bs_position)

from __future__ import annotations

import numpy as np
import pytest

from core.config import NetworkConfig
from core.network import Network
from core.types import Point2D


def blob_layout(seed: int, sizes=(10, 10), centers=((20.0, 20.0), (80.0, 80.0)), std: float = 1.0) -> np.ndarray:
    """Gaussian blobs, one per (size, center); rows ordered blob by blob."""
    rng = np.random.default_rng(seed)
    parts = [rng.normal(loc=c, scale=std, size=(s, 2)) for s, c in zip(sizes, centers)]
    return np.vstack(parts)


def make_network(positions, energy=0.2, bs=(50.0, 150.0)) -> Network:
    return Network(np.asarray(positions, dtype=float), energy, Point2D(*bs))


@pytest.fixture
def cfg() -> NetworkConfig:
    return NetworkConfig()


@pytest.fixture
def small_cfg() -> NetworkConfig:
    """A fast-dying 30-node field for end-to-end runs."""
    return NetworkConfig(
        n_nodes        = 30,
        initial_energy = 0.05,
        forced_k       = 2,
        max_rounds     = 400,
        ev_checkpoints = (10, 20, 40),
    )


@pytest.fixture
def two_blobs() -> np.ndarray:
    return blob_layout(0)

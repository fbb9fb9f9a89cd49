"""
core/rng.py – seeded, splittable randomness.

A run seed is split into independent named streams so the node layout
depends on the seed alone, whatever protocol later consumes the
`protocol` stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

STREAM_NAMES = ("layout", "protocol")


@dataclass(frozen=True)
class RngStreams:
    layout: np.random.Generator
    protocol: np.random.Generator


def rng_streams(seed: int) -> RngStreams:
    if isinstance(seed, bool) or int(seed) != seed or seed < 0:
        raise ParameterError(f"rng seed must be a non-negative integer, got {seed!r}")
    children = np.random.SeedSequence(int(seed)).spawn(len(STREAM_NAMES))
    gens = {name: np.random.Generator(np.random.PCG64(ss)) for name, ss in zip(STREAM_NAMES, children)}
    return RngStreams(**gens)

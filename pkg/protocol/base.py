"""
protocol/base.py – clustering protocol contract and registry.

High-level code (set-up phase, simulator, batch runner) depends on
`ClusteringProtocol`, never on the concrete variants. Variants register
themselves with `@register_protocol(kind)`; `ProtocolFactory.create`
imports the variant module so the registration side-effect runs.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from importlib import import_module
from typing import Dict, List, Optional, Tuple, Type

import numpy as np

from clustering.assignment import ClusterAssignment
from core.config import NetworkConfig
from core.network import Network
from density.centers import select_initial_centers

from .chs import maybe_switch_ch
from .state import ClusterState, Event, ProtocolKind

logger = logging.getLogger(__name__)


class ClusteringProtocol(ABC):
    """
    One protocol instance lives for one simulation run and owns the
    `protocol` random stream of that run.
    """

    kind: ProtocolKind
    reclusters_every_round: bool = False

    def __init__(self, *, config: NetworkConfig, rng: np.random.Generator):
        self.cfg = config
        self.rng = rng
        self.warnings: List[str] = []

    # ───────────────────────── hooks ─────────────────────────────────
    @abstractmethod
    def form_state(self, network: Network) -> ClusterState:
        """Cluster the currently alive nodes and elect cluster heads."""

    def after_round(self, state: ClusterState, network: Network) -> Tuple[ClusterState, List[Event]]:
        """End-of-round CH rotation; default is the energy-ratio switch rule."""
        return maybe_switch_ch(state, network, self.cfg.switch_threshold)

    # ───────────────────────── shared helpers ────────────────────────
    def _warn(self, msg: str) -> None:
        if msg in self.warnings:
            logger.debug(msg)
            return
        logger.warning(msg)
        self.warnings.append(msg)

    def cluster_count(self, x: np.ndarray, ids: np.ndarray) -> int:
        """forced_k (capped at the alive count) or the density-peaks k."""
        n = len(ids)
        if self.cfg.forced_k is not None:
            if self.cfg.forced_k > n:
                self._warn(f"only {n} alive nodes for k={self.cfg.forced_k}; using k={n}")
                return n
            return self.cfg.forced_k
        return select_initial_centers(x, self.cfg, node_ids=ids).k

    def random_centers(self, x: np.ndarray, k: int) -> np.ndarray:
        """k distinct alive-node positions drawn from the protocol stream."""
        picks = self.rng.choice(len(x), size=k, replace=False)
        return x[np.sort(picks)]


def single_node_state(node_id: int, network: Network) -> ClusterState:
    assignment = ClusterAssignment(labels=[0], node_ids=[node_id], centers=network.positions[[node_id]])
    return ClusterState(
        assignment           = assignment,
        ch_lists             = [[node_id]],
        active_ch_index      = [0],
        last_round_ch_energy = [float(network.energy[node_id])],
    )


def empty_state() -> ClusterState:
    return ClusterState(assignment=None, ch_lists=[], active_ch_index=[], last_round_ch_energy=[])


class _Registry:
    _cls: Dict[ProtocolKind, Type[ClusteringProtocol]] = {}

    @classmethod
    def add(cls, kind: ProtocolKind, proto_cls: Type[ClusteringProtocol]):
        cls._cls[kind] = proto_cls

    @classmethod
    def get(cls, kind: ProtocolKind) -> Type[ClusteringProtocol]:
        if kind not in cls._cls:
            raise ValueError(f"Unknown protocol '{kind}'. Registered: {[k.value for k in cls._cls]}")
        return cls._cls[kind]


_MODULES = {
    ProtocolKind.ISKMEANS:            "protocol.iskmeans",
    ProtocolKind.SOFT_KMEANS_VANILLA: "protocol.vanilla",
    ProtocolKind.HARD_KMEANS:         "protocol.hardkmeans",
    ProtocolKind.LEACH:               "protocol.leach",
}


class ProtocolFactory:
    """Central entry-point: returns a ready protocol instance."""

    @staticmethod
    def create(
        kind: ProtocolKind | str,
        *,
        config: NetworkConfig,
        rng: Optional[np.random.Generator] = None,
    ) -> ClusteringProtocol:
        kind = ProtocolKind.parse(kind)
        import_module(_MODULES[kind])
        cls = _Registry.get(kind)
        return cls(config=config, rng=rng if rng is not None else np.random.default_rng(config.rng_seed))


def register_protocol(kind: ProtocolKind):
    """Decorator used by the variant modules to register themselves."""
    def _decorator(cls: Type[ClusteringProtocol]):
        cls.kind = kind
        _Registry.add(kind, cls)
        return cls
    return _decorator

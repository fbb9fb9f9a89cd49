"""
protocol/simulator.py – one full network lifetime run.

deploy → { set-up → steady rounds until RESTART } until the network is
declared dead (alive_count ≤ n − ⌈f·n⌉) or max_rounds is reached.
A run touches only its own Network and generators, so runs for different
seeds may execute concurrently.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.config import NetworkConfig
from core.deploy import deploy_network
from core.errors import ParameterError
from core.geometry import PointsLike, as_points_array
from core.rng import rng_streams
from core.types import Role
from density.peaks import DensityProfile, decision_graph
from metrics_io.metrics import lifetime_metrics
from metrics_io.records import LifetimeMetrics, RoundLog

from .base import ProtocolFactory
from .rounds import run_setup_phase, run_steady_round
from .state import ClusterState, EventKind, ProtocolKind

logger = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    logs: List[RoundLog]
    metrics: LifetimeMetrics
    kind: ProtocolKind
    seed: int
    decision_graph: Optional[DensityProfile] = None
    warnings: List[str] = field(default_factory=list)
    initial_energy: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __iter__(self):
        # allows `logs, metrics = simulate(...)`
        yield self.logs
        yield self.metrics


def simulate(
    config: NetworkConfig,
    kind: ProtocolKind | str = ProtocolKind.ISKMEANS,
    seed: Optional[int] = None,
    *,
    layout: Optional[PointsLike] = None,
) -> SimulationResult:
    kind = ProtocolKind.parse(kind)
    if layout is not None:
        layout = as_points_array(layout)
        if len(layout) != config.n_nodes:
            config = config.replace(n_nodes=len(layout))
    config.validate()
    seed = config.rng_seed if seed is None else seed

    streams = rng_streams(seed)
    network = deploy_network(config, seed, layout)
    initial = network.energy.copy()
    try:
        graph = decision_graph(network.positions, config)
    except ParameterError as exc:
        logger.warning("no decision graph for this layout: %s", exc)
        graph = None

    protocol = ProtocolFactory.create(kind, config=config, rng=streams.protocol)
    stop_at = config.lnd_alive_limit
    logger.info("▶ [simulate] %s seed=%d n=%d (stop at alive ≤ %d or round %d)",
                kind.value, seed, network.n, stop_at, config.max_rounds)

    logs: List[RoundLog] = []
    state: Optional[ClusterState] = None
    setups = 0
    for r in range(1, config.max_rounds + 1):
        alive_at_start = network.alive.copy()
        setup_energy = 0.0
        if state is None or protocol.reclusters_every_round:
            state = run_setup_phase(network, config, protocol=protocol)
            setup_energy = state.setup_energy
            setups += 1

        network, state, log = run_steady_round(
            network, state, config,
            round_index    = r,
            protocol       = protocol,
            setup_energy   = setup_energy,
            alive_at_start = alive_at_start,
        )
        logs.append(log)

        if log.alive_count <= stop_at:
            break
        if any(ev.kind == EventKind.RESTART for ev in log.events):
            state = None

    metrics = lifetime_metrics(logs, config)
    logger.info("✔ [simulate] %s seed=%d: %d rounds, %d set-ups, FND=%d HND=%d LND=%d",
                kind.value, seed, len(logs), setups, metrics.fnd, metrics.hnd, metrics.lnd)
    return SimulationResult(
        logs           = logs,
        metrics        = metrics,
        kind           = kind,
        seed           = seed,
        decision_graph = graph,
        warnings       = list(protocol.warnings),
        initial_energy = initial,
    )


def ch_balance_gap(logs: List[RoundLog]) -> float:
    """
    max − min residual energy, after the last logged round, over every node
    that served as active cluster head in at least one round.
    """
    if not logs:
        raise ParameterError("ch_balance_gap needs at least one round log")
    served = np.zeros(logs[0].n, dtype=bool)
    for log in logs:
        served |= log.roles == int(Role.CLUSTER_HEAD)
    if not served.any():
        return 0.0
    final = logs[-1].residual[served]
    return float(final.max() - final.min())

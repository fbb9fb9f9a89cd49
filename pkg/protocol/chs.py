"""
protocol/chs.py – multi cluster-head election and switching.

Election, per cluster v with S_v alive members:
  p = max(1, ⌈S_v / ch_constant⌉) slots; walk members nearest-first to
  the cluster center and admit those whose energy exceeds the cluster
  average; fill what is left with the highest-energy members
  (closest first on ties). Slot 0 is active first.

Switching: T = E_now / E_last, where E_last is the active CH's residual
energy in the round it took office (election, SWITCH or hand-over). Below
the threshold the next alive candidate takes over (SWITCH), or the cluster
asks for re-clustering (RESTART) when none is left. Each CH thus serves
until it has spent (1 − threshold) of its energy at take-over.
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from clustering.assignment import ClusterAssignment
from core.errors import ParameterError, UndefinedAverageError
from core.network import Network
from core.types import SensorNode

from .state import ClusterState, Event, EventKind

logger = logging.getLogger(__name__)

NodesLike = Union[Network, Sequence[SensorNode]]


def cluster_energy(cluster: Sequence[SensorNode]) -> float:
    return float(sum(nd.energy for nd in cluster if nd.alive))


def cluster_avg_energy(cluster: Sequence[SensorNode]) -> float:
    alive = [nd for nd in cluster if nd.alive]
    if not alive:
        raise UndefinedAverageError("average energy of a cluster with no alive node")
    return cluster_energy(alive) / len(alive)


def ch_slot_count(size: int, ch_constant: int) -> int:
    if ch_constant < 1:
        raise ParameterError(f"ch_constant must be >= 1, got {ch_constant}")
    return max(1, math.ceil(size / ch_constant))


def _tables(nodes: NodesLike) -> Tuple[np.ndarray, np.ndarray]:
    """(energy, positions) indexed by NodeId."""
    if isinstance(nodes, Network):
        return nodes.energy, nodes.positions
    size = max(nd.id for nd in nodes) + 1 if nodes else 0
    energy = np.zeros(size)
    positions = np.zeros((size, 2))
    for nd in nodes:
        energy[nd.id] = nd.energy
        positions[nd.id] = nd.position.as_tuple()
    return energy, positions


def select_multi_chs(
    assignment: ClusterAssignment,
    nodes: NodesLike,
    ch_constant: int,
    *,
    max_slots: Optional[int] = None,
) -> ClusterState:
    energy, positions = _tables(nodes)
    ch_lists: List[List[int]] = []
    warnings: List[str] = []

    for v, members in enumerate(assignment.clusters):
        ids = np.array([i for i in members if energy[i] > 0], dtype=int)
        if len(ids) == 0:
            msg = f"cluster {v} has no alive node; excluded from CH election"
            logger.warning(msg)
            warnings.append(msg)
            ch_lists.append([])
            continue

        slots = ch_slot_count(len(ids), ch_constant)
        if max_slots is not None:
            slots = min(slots, max_slots)
        e = energy[ids]
        dist = np.hypot(*(positions[ids] - assignment.centers[v]).T)
        avg = float(e.mean())

        nearest_first = np.lexsort((ids, dist))
        chosen = [j for j in nearest_first if e[j] > avg][:slots]
        if len(chosen) < slots:
            taken = set(chosen)
            by_energy = [j for j in np.lexsort((ids, dist, -e)) if j not in taken]
            chosen += by_energy[: slots - len(chosen)]
        ch_lists.append([int(ids[j]) for j in chosen])

    return ClusterState(
        assignment           = assignment,
        ch_lists             = ch_lists,
        active_ch_index      = [0] * len(ch_lists),
        last_round_ch_energy = [float(energy[chs[0]]) if chs else 0.0 for chs in ch_lists],
        warnings             = warnings,
    )


def maybe_switch_ch(
    state: ClusterState,
    nodes: NodesLike,
    switch_threshold: float,
) -> Tuple[ClusterState, List[Event]]:
    """Apply the switch rule to every cluster; returns the updated state and events."""
    energy, _ = _tables(nodes)
    events: List[Event] = []
    active = list(state.active_ch_index)
    reference = list(state.last_round_ch_energy)

    for v, chs in enumerate(state.ch_lists):
        if not chs:
            continue
        last = state.last_round_ch_energy[v]
        if last <= 0:
            continue
        current = float(energy[chs[active[v]]])
        ratio = current / last if current > 0 else 0.0
        if ratio >= switch_threshold:
            continue
        nxt = next((pos for pos in range(active[v] + 1, len(chs)) if energy[chs[pos]] > 0), None)
        if nxt is None:
            events.append(Event(EventKind.RESTART, node_id=chs[active[v]], cluster=v))
        else:
            active[v] = nxt
            reference[v] = float(energy[chs[nxt]])
            events.append(Event(EventKind.SWITCH, node_id=chs[nxt], cluster=v))

    state.active_ch_index = active
    state.last_round_ch_energy = reference
    return state, events


def advance_dead_chs(state: ClusterState, network: Network) -> List[Event]:
    """
    Replace dead active CHs by the next alive candidate before a round.
    A cluster with alive nodes but no alive candidate left yields RESTART.
    """
    events: List[Event] = []
    alive = network.alive
    for v, chs in enumerate(state.ch_lists):
        if not chs or alive[chs[state.active_ch_index[v]]]:
            continue
        nxt = next((pos for pos in range(state.active_ch_index[v] + 1, len(chs)) if alive[chs[pos]]), None)
        if nxt is not None:
            state.active_ch_index[v] = nxt
            state.last_round_ch_energy[v] = float(network.energy[chs[nxt]])
            events.append(Event(EventKind.SWITCH, node_id=chs[nxt], cluster=v))
        elif any(alive[i] for i in state.members(v)):
            events.append(Event(EventKind.RESTART, node_id=chs[state.active_ch_index[v]], cluster=v))
    return events

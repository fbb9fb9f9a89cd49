"""
protocol/rounds.py – set-up phase and steady-phase rounds.

Control traffic is charged with flat rules:
  set-up   every alive node: tx(control, d_to_bs) + rx(control)
  SWITCH   new CH: tx(control, farthest alive member); members: rx(control)
  RESTART  last CH: tx(control, d_to_bs)

Round debits are summed per node and applied at once, so a node that runs
dry mid-round still delivers and is reported dead at the end of the round.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from core.config import NetworkConfig
from core.network import Network
from energy.radio import RadioParams, ch_round_energy, member_round_energy, rx_energy, tx_energy
from metrics_io.records import RoundLog

from .base import ClusteringProtocol, ProtocolFactory
from .chs import advance_dead_chs, maybe_switch_ch
from .state import ClusterState, Event, EventKind, ProtocolKind

logger = logging.getLogger(__name__)


def run_setup_phase(
    network: Network,
    config: NetworkConfig,
    kind: ProtocolKind | str = ProtocolKind.ISKMEANS,
    *,
    protocol: Optional[ClusteringProtocol] = None,
    rng: Optional[np.random.Generator] = None,
) -> ClusterState:
    """
    Charge the set-up control traffic, then cluster the survivors and
    elect their cluster heads. `state.setup_energy` holds the joules drawn.
    """
    if protocol is None:
        protocol = ProtocolFactory.create(kind, config=config, rng=rng)
    radio = RadioParams.from_config(config)

    amounts = np.zeros(network.n)
    alive = network.alive
    amounts[alive] = (np.asarray(tx_energy(config.control_bits, network.d_to_bs[alive], radio))
                      + rx_energy(config.control_bits, radio))
    spent = network.debit(amounts)

    state = protocol.form_state(network)
    state.setup_energy = spent
    state.apply_roles(network)
    logger.debug("set-up (%s): %d clusters, CH lists %s", protocol.kind.value, state.k, state.ch_lists)
    return state


def _control_costs(events: List[Event], state: ClusterState, network: Network,
                   config: NetworkConfig, radio: RadioParams) -> np.ndarray:
    amounts = np.zeros(network.n)
    alive = network.alive
    bits = config.control_bits
    for ev in events:
        if ev.kind == EventKind.SWITCH and alive[ev.node_id]:
            members = np.array([i for i in state.members(ev.cluster) if alive[i] and i != ev.node_id], dtype=int)
            if len(members):
                far = np.hypot(*(network.positions[members] - network.positions[ev.node_id]).T).max()
                amounts[ev.node_id] += tx_energy(bits, far, radio)
                amounts[members] += rx_energy(bits, radio)
        elif ev.kind == EventKind.RESTART and alive[ev.node_id]:
            amounts[ev.node_id] += tx_energy(bits, network.d_to_bs[ev.node_id], radio)
    return amounts


def run_steady_round(
    network: Network,
    state: ClusterState,
    config: NetworkConfig,
    *,
    round_index: int = 1,
    protocol: Optional[ClusteringProtocol] = None,
    setup_energy: float = 0.0,
    alive_at_start: Optional[np.ndarray] = None,
) -> Tuple[Network, ClusterState, RoundLog]:
    """
    One data round: members → active CH → BS, then the CH rotation rule.
    `alive_at_start` lets a caller that charged a set-up phase in the same
    round report the set-up deaths in this round's log.
    """
    radio = RadioParams.from_config(config)
    start_alive = network.alive.copy() if alive_at_start is None else np.asarray(alive_at_start)
    bits = config.packet_bits
    events: List[Event] = []

    if network.alive_count == 0:
        events += [Event(EventKind.DEATH, node_id=int(i)) for i in np.flatnonzero(start_alive)]
        log = RoundLog(round_index, network.energy.copy(), 0, events, [], setup_energy,
                       state.labels(network.n), network.roles.copy())
        return network, state, log

    events += advance_dead_chs(state, network)
    state.apply_roles(network)
    served_roles = network.roles.copy()

    alive = network.alive
    pos = network.positions
    amounts = np.zeros(network.n)
    sizes: List[int] = []
    orphans: List[int] = []
    out_of_range = 0

    for v in range(state.k):
        members = [i for i in state.members(v) if alive[i]]
        sizes.append(len(members))
        ch = state.active_ch(v)
        if ch is None or not alive[ch]:
            orphans.extend(members)
            continue

        senders = np.array([i for i in members if i != ch], dtype=int)
        if len(senders):
            d = np.hypot(*(pos[senders] - pos[ch]).T)
            amounts[senders] += member_round_energy(bits, d, radio)
            out_of_range += int(np.count_nonzero(d > config.max_comm_range))
        g = len(senders)
        d_bs = float(network.d_to_bs[ch])
        amounts[ch] += ch_round_energy(g, bits, config.aggregation_ratio_c, d_bs, radio,
                                       own_data=config.ch_includes_own_data)
        if g == 0 and config.lone_ch_transmits and not config.ch_includes_own_data:
            amounts[ch] += member_round_energy(bits, d_bs, radio)
        out_of_range += int(d_bs > config.max_comm_range)

    direct = np.array([i for i in state.direct_ids if alive[i]] + orphans, dtype=int)
    if len(direct):
        amounts[direct] += tx_energy(bits, network.d_to_bs[direct], radio)
        out_of_range += int(np.count_nonzero(network.d_to_bs[direct] > config.max_comm_range))
    if out_of_range:
        logger.warning("round %d: %d links longer than max_comm_range=%.0f m",
                       round_index, out_of_range, config.max_comm_range)

    spent = network.debit(amounts)

    if protocol is not None:
        state, rotation = protocol.after_round(state, network)
    else:
        state, rotation = maybe_switch_ch(state, network, config.switch_threshold)
    spent += network.debit(_control_costs(rotation, state, network, config, radio))
    events += rotation
    state.apply_roles(network)

    events += [Event(EventKind.DEATH, node_id=int(i)) for i in np.flatnonzero(start_alive & ~network.alive)]
    log = RoundLog(
        round             = round_index,
        residual          = network.energy.copy(),
        alive_count       = network.alive_count,
        events            = events,
        per_cluster_sizes = sizes,
        energy_spent      = setup_energy + spent,
        labels            = state.labels(network.n),
        roles             = served_roles,
    )
    return network, state, log

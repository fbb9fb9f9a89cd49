from .base import ClusteringProtocol, ProtocolFactory, register_protocol
from .chs import advance_dead_chs, ch_slot_count, cluster_avg_energy, cluster_energy, maybe_switch_ch, select_multi_chs
from .rounds import run_setup_phase, run_steady_round
from .simulator import SimulationResult, ch_balance_gap, simulate
from .state import ClusterState, Event, EventKind, ProtocolKind

# variant modules register themselves on import
from . import hardkmeans, iskmeans, leach, vanilla  # noqa: E402,F401

__all__ = [
    "ClusteringProtocol", "ProtocolFactory", "register_protocol",
    "advance_dead_chs", "ch_slot_count", "cluster_avg_energy", "cluster_energy",
    "maybe_switch_ch", "select_multi_chs",
    "run_setup_phase", "run_steady_round",
    "SimulationResult", "ch_balance_gap", "simulate",
    "ClusterState", "Event", "EventKind", "ProtocolKind",
]

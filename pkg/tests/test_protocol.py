import math

import numpy as np
import pytest

from clustering.assignment import ClusterAssignment
from clustering.reassign import reassign_boundary
from core.config import NetworkConfig
from core.deploy import deploy_network
from core.errors import ConfigError, UndefinedAverageError
from core.types import Point2D, Role, SensorNode
from energy.radio import RadioParams, ch_round_energy, tx_energy
from protocol.base import ProtocolFactory
from protocol.chs import (
    advance_dead_chs,
    ch_slot_count,
    cluster_avg_energy,
    cluster_energy,
    maybe_switch_ch,
    select_multi_chs,
)
from protocol.rounds import run_setup_phase, run_steady_round
from protocol.simulator import ch_balance_gap, simulate
from protocol.state import ClusterState, Event, EventKind, ProtocolKind

from conftest import blob_layout, make_network

P = RadioParams.from_config(NetworkConfig())


def one_cluster(n, center=(0.0, 0.0)):
    return ClusterAssignment(labels=np.zeros(n, dtype=int), node_ids=np.arange(n), centers=[center])


def fixed_state(ch_list, n, last_energy):
    return ClusterState(
        assignment           = one_cluster(n),
        ch_lists             = [list(ch_list)],
        active_ch_index      = [0],
        last_round_ch_energy = [last_energy],
    )


# ───────────────────────── cluster energy ───────────────────────────
def test_cluster_energy_examples():
    nodes = [SensorNode(i, Point2D(i, 0), 0.2) for i in range(3)]
    assert cluster_energy(nodes) == pytest.approx(0.6)
    assert cluster_energy([]) == 0.0
    mixed = nodes + [SensorNode(3, Point2D(3, 0), 0.0)]
    assert cluster_energy(mixed) == pytest.approx(0.6)
    assert cluster_avg_energy(mixed) == pytest.approx(0.2)


def test_average_of_dead_cluster_is_undefined():
    with pytest.raises(UndefinedAverageError):
        cluster_avg_energy([SensorNode(0, Point2D(0, 0), 0.0)])


# ───────────────────────── CH election ──────────────────────────────
def test_slot_count_matches_formula_exhaustively():
    for c in (5, 10, 20):
        for size in range(1, 101):
            assert ch_slot_count(size, c) == max(1, math.ceil(size / c))


def test_thirty_node_cluster_gets_three_heads():
    rng = np.random.default_rng(0)
    net = make_network(rng.uniform(0, 30, size=(30, 2)), energy=rng.uniform(0.1, 0.2, 30))
    state = select_multi_chs(one_cluster(30, (15, 15)), net, 10)
    assert len(state.ch_lists[0]) == 3
    assert len(set(state.ch_lists[0])) == 3
    assert state.active_ch(0) == state.ch_lists[0][0]


def test_single_node_cluster_heads_itself():
    net = make_network([(4, 4)])
    state = select_multi_chs(one_cluster(1, (4, 4)), net, 10)
    assert state.ch_lists == [[0]]
    assert state.last_round_ch_energy == [0.2]


def test_equal_energy_picks_nearest_to_center():
    net = make_network([(x, 0) for x in range(30)])
    state = select_multi_chs(one_cluster(30), net, 10)
    assert state.ch_lists == [[0, 1, 2]]


def test_above_average_members_come_first_then_energy_fill():
    net = make_network([(1, 0), (2, 0), (3, 0), (4, 0)], energy=[0.1, 0.3, 0.1, 0.3])
    assert select_multi_chs(one_cluster(4), net, 2).ch_lists == [[1, 3]]

    net = make_network([(1, 0), (2, 0), (3, 0), (4, 0)], energy=[0.1, 0.3, 0.1, 0.1])
    assert select_multi_chs(one_cluster(4), net, 2).ch_lists == [[1, 0]]


def test_max_slots_limits_the_list():
    net = make_network([(x, 0) for x in range(30)])
    assert len(select_multi_chs(one_cluster(30), net, 10, max_slots=1).ch_lists[0]) == 1


def test_election_accepts_sensor_nodes():
    nodes = [SensorNode(i, Point2D(i, 0), 0.2) for i in range(5)]
    assert select_multi_chs(one_cluster(5), nodes, 10).ch_lists == [[0]]


# ───────────────────────── CH switching ─────────────────────────────
@pytest.mark.parametrize("current, switched", [(0.095, False), (0.08, True)])
def test_switch_rule_examples(current, switched):
    net = make_network([(0, 0), (1, 0), (2, 0)], energy=[current, 0.2, 0.2])
    state, events = maybe_switch_ch(fixed_state([0, 1], 3, 0.10), net, 0.9)
    if switched:
        assert events == [Event(EventKind.SWITCH, node_id=1, cluster=0)]
        assert state.active_ch(0) == 1
    else:
        assert events == [] and state.active_ch(0) == 0


def test_switch_past_last_candidate_restarts():
    net = make_network([(0, 0), (1, 0)], energy=[0.08, 0.2])
    _, events = maybe_switch_ch(fixed_state([0], 2, 0.10), net, 0.9)
    assert events == [Event(EventKind.RESTART, node_id=0, cluster=0)]


def test_switch_rule_keeps_the_take_over_energy_while_the_head_serves():
    net = make_network([(0, 0), (1, 0), (2, 0)], energy=[0.185, 0.19, 0.2])
    state, events = maybe_switch_ch(fixed_state([0, 1], 3, 0.2), net, 0.9)
    assert events == []
    assert state.last_round_ch_energy == [0.2]

    net.energy[0] = 0.17
    state, events = maybe_switch_ch(state, net, 0.9)
    assert events == [Event(EventKind.SWITCH, node_id=1, cluster=0)]
    assert state.last_round_ch_energy == [0.19]


def test_dead_active_head_hands_over_before_the_round():
    net = make_network([(0, 0), (1, 0), (2, 0)], energy=[0.0, 0.15, 0.2])
    state = fixed_state([0, 1], 3, 0.2)
    assert advance_dead_chs(state, net) == [Event(EventKind.SWITCH, node_id=1, cluster=0)]
    assert state.active_ch(0) == 1
    assert state.last_round_ch_energy == [0.15]


# ───────────────────────── set-up phase ─────────────────────────────
def test_setup_on_two_blobs(cfg, two_blobs):
    net = make_network(two_blobs)
    state = run_setup_phase(net, cfg.replace(forced_k=2), "iskmeans", rng=np.random.default_rng(0))
    assert state.k == 2
    assert all(len(chs) >= 1 for chs in state.ch_lists)
    assert sorted(i for v in range(2) for i in state.members(v)) == list(range(20))
    assert state.setup_energy > 0
    assert np.count_nonzero(net.roles == int(Role.CLUSTER_HEAD)) == 2


@pytest.mark.parametrize("kind", ["iskmeans", "softkmeans", "hardkmeans"])
def test_setup_with_one_survivor(cfg, kind):
    energy = np.zeros(10)
    energy[3] = 0.2
    net = make_network(np.random.default_rng(1).uniform(0, 100, (10, 2)), energy=energy)
    state = run_setup_phase(net, cfg, kind, rng=np.random.default_rng(0))
    assert state.ch_lists == [[3]]
    assert net.roles[3] == int(Role.CLUSTER_HEAD)


def test_forced_k_above_alive_count_is_reduced_with_warning(cfg):
    energy = np.zeros(10)
    energy[:3] = 0.2
    net = make_network(np.random.default_rng(2).uniform(0, 100, (10, 2)), energy=energy)
    proto = ProtocolFactory.create("hardkmeans", config=cfg.replace(forced_k=5), rng=np.random.default_rng(0))
    state = run_setup_phase(net, proto.cfg, protocol=proto)
    assert state.k == 3
    assert any("k=5" in w for w in proto.warnings)


def test_leach_elects_about_k_heads_per_round():
    cfg = NetworkConfig(forced_k=4)
    counts = []
    for seed in range(100):
        net = deploy_network(cfg, seed)
        proto = ProtocolFactory.create("leach", config=cfg, rng=np.random.default_rng(seed))
        counts.append(proto.form_state(net).k)
    assert abs(np.mean(counts) - 4) <= 1


def test_leach_serves_every_node_once_per_epoch():
    cfg = NetworkConfig(forced_k=4)
    net = deploy_network(cfg, 3)
    proto = ProtocolFactory.create("leach", config=cfg, rng=np.random.default_rng(3))
    served = np.zeros(cfg.n_nodes, dtype=int)
    for _ in range(25):
        for chs in proto.form_state(net).ch_lists:
            served[chs] += 1
    assert (served == 1).all()


def test_factory_rejects_unknown_protocol(cfg):
    with pytest.raises(ConfigError):
        ProtocolFactory.create("vleach", config=cfg)


def test_protocol_kind_parse_accepts_spellings():
    assert ProtocolKind.parse("IS-kmeans") is ProtocolKind.ISKMEANS
    assert ProtocolKind.parse("hard_kmeans") is ProtocolKind.HARD_KMEANS


# ───────────────────────── steady rounds ────────────────────────────
def test_steady_round_hand_arithmetic(cfg):
    cfg = cfg.replace(control_bits=0)
    net = make_network([(0, 0), (10, 0), (0, 20)])
    before = net.energy.copy()
    d_bs = float(net.d_to_bs[0])
    _, _, log = run_steady_round(net, fixed_state([0], 3, 0.2), cfg)

    member = [tx_energy(4000, 10.0, P), tx_energy(4000, 20.0, P)]
    head = ch_round_energy(2, 4000, 1.0, d_bs, P)
    assert log.energy_spent == pytest.approx(sum(member) + head, rel=1e-12)
    assert (before - net.energy).tolist() == pytest.approx([head] + member, rel=1e-12)
    assert log.alive_count == 3 and log.events == []
    assert log.roles[0] == int(Role.CLUSTER_HEAD)
    assert log.per_cluster_sizes == [3]


def test_lone_head_still_reports_to_the_bs(cfg):
    net = make_network([(0, 0)])
    _, _, log = run_steady_round(net, fixed_state([0], 1, 0.2), cfg.replace(control_bits=0))
    assert log.energy_spent == pytest.approx(tx_energy(4000, float(net.d_to_bs[0]), P))

    net = make_network([(0, 0)])
    quiet = cfg.replace(control_bits=0, lone_ch_transmits=False)
    assert run_steady_round(net, fixed_state([0], 1, 0.2), quiet)[2].energy_spent == 0.0


def test_members_follow_the_next_candidate_when_the_head_died(cfg):
    net = make_network([(0, 0), (1, 0), (2, 0)], energy=[0.0, 0.2, 0.2])
    _, state, log = run_steady_round(net, fixed_state([0, 1], 3, 0.2), cfg)
    assert log.events[0] == Event(EventKind.SWITCH, node_id=1, cluster=0)
    assert log.roles[1] == int(Role.CLUSTER_HEAD)
    assert net.energy[0] == 0.0
    assert net.energy[1] < net.energy[2] < 0.2


def test_head_serves_until_it_spent_its_share_since_taking_office(cfg):
    # ~7.3 mJ per round for this head, so the 10 % share of 0.2 J runs out in round 3
    net = make_network([(0, 0), (10, 0), (0, 20)])
    state = fixed_state([0, 1], 3, 0.2)
    switches = []
    for r in range(1, 41):
        _, state, log = run_steady_round(net, state, cfg, round_index=r)
        switches = [ev for ev in log.events if ev.kind == EventKind.SWITCH]
        if switches:
            break
        assert net.energy[0] / 0.2 >= 0.9
    assert switches == [Event(EventKind.SWITCH, node_id=1, cluster=0)]
    assert r == 3
    assert net.energy[0] / 0.2 < 0.9
    assert state.active_ch(0) == 1
    assert state.last_round_ch_energy[0] == pytest.approx(net.energy[1], abs=1e-4)


def test_dead_network_gives_empty_round(cfg):
    net = make_network([(0, 0), (1, 0)], energy=0.0)
    _, _, log = run_steady_round(net, fixed_state([0], 2, 0.2), cfg, round_index=9)
    assert log.network_dead and log.round == 9
    assert log.events == [] and log.energy_spent == 0.0


def test_deaths_are_reported_in_the_round_they_happen(cfg):
    net = make_network([(0, 0), (10, 0)], energy=[0.2, 1e-6])
    _, _, log = run_steady_round(net, fixed_state([0], 2, 0.2), cfg)
    assert log.deaths() == [1]
    assert log.alive_count == 1


# ───────────────────────── full runs ────────────────────────────────
@pytest.mark.parametrize("kind", ["iskmeans", "hardkmeans", "leach"])
def test_starved_network_dies_in_round_one(kind):
    res = simulate(NetworkConfig(n_nodes=20, initial_energy=1e-9), kind, seed=1)
    m = res.metrics
    assert (m.fnd, m.hnd, m.lnd) == (1, 1, 1)
    assert not m.lnd_censored
    assert len(res.logs) == 1


def test_free_radio_runs_to_the_round_cap():
    cfg = NetworkConfig(n_nodes=30, packet_bits=0, control_bits=0, max_rounds=50)
    res = simulate(cfg, "iskmeans", seed=4)
    assert res.metrics.total_rounds == 50
    assert res.metrics.fnd_censored and res.metrics.hnd_censored and res.metrics.lnd_censored
    assert np.array_equal(res.logs[-1].residual, res.initial_energy)
    assert sum(log.energy_spent for log in res.logs) == 0.0


@pytest.mark.parametrize("kind", list(ProtocolKind))
def test_simulation_is_deterministic(small_cfg, kind):
    a = simulate(small_cfg.replace(max_rounds=60), kind, seed=5)
    b = simulate(small_cfg.replace(max_rounds=60), kind, seed=5)
    assert a.metrics == b.metrics
    assert all(np.array_equal(x.residual, y.residual) for x, y in zip(a.logs, b.logs))


@pytest.mark.parametrize("kind", list(ProtocolKind))
def test_logged_spending_accounts_for_every_joule(small_cfg, kind):
    res = simulate(small_cfg, kind, seed=2)
    drawn = res.initial_energy.sum() - res.logs[-1].residual.sum()
    assert sum(log.energy_spent for log in res.logs) == pytest.approx(drawn, rel=1e-9)


def test_run_ends_at_the_dead_network_limit(small_cfg):
    res = simulate(small_cfg, "iskmeans", seed=3)
    assert res.logs[-1].alive_count <= small_cfg.lnd_alive_limit or res.metrics.total_rounds == small_cfg.max_rounds
    assert all(log.alive_count > small_cfg.lnd_alive_limit for log in res.logs[:-1])
    m = res.metrics
    assert m.fnd <= m.hnd <= m.lnd <= m.total_rounds


def test_invalid_config_is_rejected_before_running():
    with pytest.raises(ConfigError):
        simulate(NetworkConfig(beta=-1.0), "iskmeans", seed=1)


def test_explicit_layout_sets_node_count(small_cfg, two_blobs):
    res = simulate(small_cfg.replace(max_rounds=5), "iskmeans", seed=1, layout=two_blobs)
    assert res.logs[0].n == 20
    assert res.decision_graph is not None and len(res.decision_graph) == 20


# ───────────────────────── load balance ─────────────────────────────
def test_reassignment_balances_cluster_heads_on_uneven_clusters():
    cfg = NetworkConfig(forced_k=2, max_rounds=10)
    wins = 0
    for seed in range(20):
        x = blob_layout(seed, sizes=(20, 8), centers=((30.0, 50.0), (70.0, 50.0)), std=5.0)
        ids = np.arange(len(x))

        proto = ProtocolFactory.create("iskmeans", config=cfg, rng=np.random.default_rng(seed))
        before, z = proto.cluster(x, ids)
        if z is not None:
            after = reassign_boundary(before, z, cfg.reassign_threshold)
            assert after.size_ratio() <= before.size_ratio()

        soft = ch_balance_gap(simulate(cfg, "iskmeans", seed=seed, layout=x).logs)
        hard = ch_balance_gap(simulate(cfg, "hardkmeans", seed=seed, layout=x).logs)
        wins += soft < hard
    assert wins >= 18

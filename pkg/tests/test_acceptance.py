"""
Multi-seed lifetime comparisons on the two reference fields.

Each batch runs every protocol to its dead-network limit, so the whole
module is marked slow.
"""

import numpy as np
import pytest

from core.config import NetworkConfig
from metrics_io.batch import run_batch
from protocol.simulator import simulate
from protocol.state import ProtocolKind

pytestmark = pytest.mark.slow

SEEDS = list(range(1, 21))
KINDS = ["iskmeans", "leach", "hardkmeans"]


def _mean(summary, kind, column):
    return float(summary.loc[summary["protocol"] == kind, f"{column}_mean"].iloc[0])


@pytest.fixture(scope="module")
def field_one():
    cfg = NetworkConfig(forced_k=4, ev_checkpoints=(200, 400, 600, 800, 1000))
    return run_batch(cfg, KINDS, SEEDS, workers=4)


@pytest.fixture(scope="module")
def field_two():
    return run_batch(NetworkConfig.scenario(2), KINDS, SEEDS, workers=4)


def test_energy_is_conserved_over_fifty_runs():
    kinds = list(ProtocolKind)
    for seed in range(50):
        res = simulate(NetworkConfig(), kinds[seed % len(kinds)], seed=seed)
        drawn = res.initial_energy.sum() - res.logs[-1].residual.sum()
        logged = sum(log.energy_spent for log in res.logs)
        assert logged == pytest.approx(drawn, rel=1e-9)
        assert (res.logs[-1].residual >= 0).all()


def test_first_death_ordering_on_field_one(field_one):
    assert field_one.errors == []
    s = field_one.summary
    iskm, leach, hard = (_mean(s, k, "fnd") for k in KINDS)
    assert iskm > leach > hard
    assert iskm / hard >= 5


def test_energy_variance_ordering_on_field_one(field_one):
    s = field_one.summary
    for cp in (200, 400, 600, 800, 1000):
        iskm = _mean(s, "iskmeans", f"ev_{cp}")
        assert iskm < _mean(s, "leach", f"ev_{cp}")
        assert iskm < _mean(s, "hardkmeans", f"ev_{cp}")


def test_field_two_keeps_the_orderings(field_two):
    assert field_two.errors == []
    s = field_two.summary
    iskm, leach, hard = (_mean(s, k, "fnd") for k in KINDS)
    assert iskm > leach > hard
    for cp in NetworkConfig.scenario(2).ev_checkpoints:
        iskm_ev = _mean(s, "iskmeans", f"ev_{cp}")
        assert iskm_ev < _mean(s, "leach", f"ev_{cp}")
        assert iskm_ev < _mean(s, "hardkmeans", f"ev_{cp}")


def test_field_two_conserves_energy():
    cfg = NetworkConfig.scenario(2)
    for seed in range(3):
        res = simulate(cfg, "iskmeans", seed=seed)
        drawn = res.initial_energy.sum() - res.logs[-1].residual.sum()
        assert sum(log.energy_spent for log in res.logs) == pytest.approx(drawn, rel=1e-9)
        assert np.isfinite(res.metrics.lnd)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.config import NetworkConfig
from core.errors import ParameterError
from core.types import Point2D, SensorNode
from energy.radio import (
    RadioParams,
    amplifier_energy,
    ch_round_energy,
    debit,
    member_round_energy,
    rx_energy,
    tx_energy,
)

P = RadioParams.from_config(NetworkConfig())


def test_d0_matches_reported_crossover():
    assert 87.6 <= P.d0 <= 88.0
    assert P.d0 == np.sqrt(P.eps_fs / P.eps_mp)


def test_tx_energy_examples():
    assert tx_energy(4000, 50, P) == pytest.approx(300e-6, rel=1e-12)
    assert tx_energy(0, 50, P) == 0.0
    assert tx_energy(0, 500, P) == 0.0


def test_tx_energy_continuous_at_d0():
    free_space = 4000 * P.e_elec + 4000 * P.eps_fs * P.d0 ** 2
    multipath = 4000 * P.e_elec + 4000 * P.eps_mp * P.d0 ** 4
    assert free_space == pytest.approx(multipath, rel=1e-15)
    assert tx_energy(4000, P.d0, P) == pytest.approx(free_space, rel=1e-15)


def test_tx_energy_accepts_arrays():
    d = np.array([0.0, 50.0, 200.0])
    out = tx_energy(4000, d, P)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(300e-6)
    assert out[2] == pytest.approx(4000 * P.e_elec + 4000 * P.eps_mp * 200.0 ** 4)


def test_tx_energy_rejects_negative_inputs():
    with pytest.raises(ParameterError):
        tx_energy(-1, 10, P)
    with pytest.raises(ParameterError):
        tx_energy(10, -1, P)


@given(st.integers(0, 10_000), st.floats(0, 500), st.floats(0, 500))
def test_tx_energy_monotone_in_distance(bits, d1, d2):
    lo, hi = sorted((d1, d2))
    assert tx_energy(bits, lo, P) <= tx_energy(bits, hi, P)


@given(st.integers(0, 10_000), st.floats(0, 500))
def test_rx_never_exceeds_tx(bits, d):
    assert rx_energy(bits, P) <= tx_energy(bits, d, P)


def test_rx_energy_examples():
    assert rx_energy(4000, P) == pytest.approx(200e-6, rel=1e-12)
    assert rx_energy(0, P) == 0.0


def test_ch_round_energy_examples():
    assert ch_round_energy(0, 4000, 1.0, 50, P) == 0.0
    assert ch_round_energy(1, 4000, 1.0, 50, P) == pytest.approx(520e-6, rel=1e-12)
    assert ch_round_energy(6, 4000, 0.5, 120, P) == pytest.approx(2 * ch_round_energy(3, 4000, 0.5, 120, P))


def test_ch_round_energy_own_data_adds_one_forwarded_packet():
    base = ch_round_energy(2, 4000, 1.0, 50, P)
    own = ch_round_energy(2, 4000, 1.0, 50, P, own_data=True)
    assert own - base == pytest.approx(tx_energy(4000, 50, P) + 4000 * P.e_da)


def test_ch_round_energy_rejects_bad_ratio():
    with pytest.raises(ParameterError):
        ch_round_energy(1, 4000, 0.0, 50, P)


def test_member_round_energy_examples():
    assert member_round_energy(4000, 20, P) == pytest.approx(216e-6, rel=1e-12)
    assert member_round_energy(4000, 0, P) == pytest.approx(200e-6, rel=1e-12)
    assert amplifier_energy(4000, 0, P) == 0.0
    assert member_round_energy(4000, 21, P) > member_round_energy(4000, 20, P)


def test_debit_examples():
    node = SensorNode(0, Point2D(0, 0), 0.2)
    after = debit(node, 520e-6)
    assert after.energy == pytest.approx(0.19948) and after.alive
    assert debit(node, 0.0) == node
    dead = debit(node, 1.0)
    assert dead.energy == 0.0 and not dead.alive
    with pytest.raises(ParameterError):
        debit(node, -1e-6)

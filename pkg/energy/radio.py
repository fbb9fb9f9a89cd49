"""
energy/radio.py – first-order radio model.

    E_T(l, d) = l·E_elec + l·ε_fs·d²   (d ≤ d0)
              = l·E_elec + l·ε_mp·d⁴   (d >  d0)
    E_R(l)    = l·E_elec
    d0        = sqrt(ε_fs / ε_mp)

Transmission helpers accept scalars or numpy arrays of distances; a scalar
in gives a float out.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from core.config import NetworkConfig
from core.errors import ParameterError
from core.types import SensorNode


@dataclass(frozen=True)
class RadioParams:
    e_elec: float = 50e-9
    eps_fs: float = 10e-12
    eps_mp: float = 0.0013e-12
    e_da: float   = 5e-9

    @property
    def d0(self) -> float:
        return math.sqrt(self.eps_fs / self.eps_mp)

    @classmethod
    def from_config(cls, cfg: NetworkConfig) -> "RadioParams":
        return cls(e_elec=cfg.e_elec, eps_fs=cfg.eps_fs, eps_mp=cfg.eps_mp, e_da=cfg.e_da)


def _out(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def amplifier_energy(bits: int, d, p: RadioParams):
    d = np.asarray(d, dtype=float)
    per_bit = np.where(d <= p.d0, p.eps_fs * d ** 2, p.eps_mp * d ** 4)
    return _out(bits * per_bit)


def tx_energy(bits: int, d, p: RadioParams):
    if bits < 0:
        raise ParameterError(f"bits must be >= 0, got {bits}")
    d = np.asarray(d, dtype=float)
    if (d < 0).any():
        raise ParameterError("transmission distance must be >= 0")
    return _out(bits * p.e_elec + np.asarray(amplifier_energy(bits, d, p)))


def rx_energy(bits: int, p: RadioParams) -> float:
    if bits < 0:
        raise ParameterError(f"bits must be >= 0, got {bits}")
    return bits * p.e_elec


def ch_round_energy(
    g: int,
    bits: int,
    c: float,
    d_to_bs: float,
    p: RadioParams,
    *,
    own_data: bool = False,
) -> float:
    """
    Cluster-head cost for one round with `g` members.

    With `own_data` the CH's own packet is aggregated and forwarded too; it
    is never received, so the reception term keeps using `g`.
    """
    if g < 0:
        raise ParameterError(f"member count must be >= 0, got {g}")
    if not 0 < c <= 1:
        raise ParameterError(f"aggregation ratio must be in (0, 1], got {c}")
    sources = g + (1 if own_data else 0)
    return (sources * c * tx_energy(bits, d_to_bs, p)
            + sources * c * bits * p.e_da
            + g * rx_energy(bits, p))


def member_round_energy(bits: int, d_to_ch, p: RadioParams):
    return tx_energy(bits, d_to_ch, p)


def debit(node: SensorNode, amount: float) -> SensorNode:
    """Residual energy after `amount`, clamped at 0 (alive follows energy)."""
    if amount < 0:
        raise ParameterError(f"debit amount must be >= 0, got {amount}")
    return dataclasses.replace(node, energy=max(node.energy - amount, 0.0))

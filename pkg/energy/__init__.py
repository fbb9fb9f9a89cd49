from .radio import (
    RadioParams,
    amplifier_energy,
    ch_round_energy,
    debit,
    member_round_energy,
    rx_energy,
    tx_energy,
)

__all__ = [
    "RadioParams", "amplifier_energy", "ch_round_energy", "debit",
    "member_round_energy", "rx_energy", "tx_energy",
]

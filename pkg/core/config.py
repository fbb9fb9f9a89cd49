"""
core/config.py – simulator configuration.

Layering: dataclass defaults (100 m field) → flat YAML file → CLI flags.
YAML keys are exactly the NetworkConfig field names; unknown keys and
out-of-range values raise ConfigError listing every problem found.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, Union

import yaml

from .errors import ConfigError
from .types import Point2D

DEFAULT_EV_CHECKPOINTS: Tuple[int, ...] = (200, 400, 600, 800, 1000, 1200, 1400)
DENSITY_METHODS = ("kde", "cutoff")


def load_yaml(path: str | Path) -> Dict[str, Any]:
    path = Path(path).expanduser().resolve()
    if not path.exists():
        raise FileNotFoundError(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a flat key/value mapping, got {type(data).__name__}")
    return data


@dataclass(frozen=True)
class NetworkConfig:
    # deployment
    area_width: float              = 100.0
    area_height: float             = 100.0
    bs_position: Point2D           = Point2D(50.0, 150.0)
    n_nodes: int                   = 100
    initial_energy: float          = 0.2
    # radio (SI units)
    packet_bits: int               = 4000
    control_bits: int              = 100
    e_elec: float                  = 50e-9
    eps_fs: float                  = 10e-12
    eps_mp: float                  = 0.0013e-12
    e_da: float                    = 5e-9
    aggregation_ratio_c: float     = 1.0
    # clustering
    beta: float                    = 0.2
    dc_neighbor_fraction: float    = 0.02
    kde_bandwidth: Union[float, str] = "auto"
    density_method: str            = "kde"
    forced_k: Optional[int]        = None
    reassign_threshold: float      = 0.15
    convergence_eps: float         = 1e-4
    r_max: int                     = 100
    # cluster heads
    ch_constant: int               = 10
    switch_threshold: float        = 0.9
    lone_ch_transmits: bool        = True
    ch_includes_own_data: bool     = False
    max_comm_range: float          = 250.0
    # run control
    death_fraction_for_lnd: float  = 0.85
    max_rounds: int                = 10000
    rng_seed: int                  = 1
    ev_checkpoints: Tuple[int, ...] = field(default=DEFAULT_EV_CHECKPOINTS)

    def __post_init__(self):
        if not isinstance(self.bs_position, Point2D):
            object.__setattr__(self, "bs_position", _to_point("bs_position", self.bs_position))
        if not isinstance(self.ev_checkpoints, tuple):
            object.__setattr__(self, "ev_checkpoints", _to_checkpoints("ev_checkpoints", self.ev_checkpoints))
        if not isinstance(self.kde_bandwidth, (str, float)):
            object.__setattr__(self, "kde_bandwidth", _to_bandwidth("kde_bandwidth", self.kde_bandwidth))

    # ───────────────────────── derived values ────────────────────────
    @property
    def lnd_alive_limit(self) -> int:
        """Alive count at (or below) which the network counts as dead."""
        return lnd_alive_limit(self.n_nodes, self.death_fraction_for_lnd)

    # ───────────────────────── (de)serialisation ─────────────────────
    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any], *, base: Optional["NetworkConfig"] = None) -> "NetworkConfig":
        """Build a config from a flat mapping, coercing every value to its field type."""
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(mapping) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {unknown}. Known: {sorted(known)}")

        values = (base or cls()).to_mapping(plain=False)
        problems: list[str] = []
        for key, raw in mapping.items():
            try:
                values[key] = _COERCE[key](key, raw)
            except ConfigError as exc:
                problems.append(str(exc))
        if problems:
            raise ConfigError("invalid configuration: " + "; ".join(problems))
        return cls(**values)

    def to_mapping(self, *, plain: bool = True) -> Dict[str, Any]:
        """Field dict; with `plain` the values are YAML-safe builtins."""
        out = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        if plain:
            out["bs_position"]    = [self.bs_position.x, self.bs_position.y]
            out["ev_checkpoints"] = list(self.ev_checkpoints)
        return out

    def replace(self, **changes: Any) -> "NetworkConfig":
        return NetworkConfig.from_mapping(changes, base=self)

    def dump_yaml(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fh:
            yaml.safe_dump(self.to_mapping(), fh, sort_keys=False)

    # ───────────────────────── presets ───────────────────────────────
    @classmethod
    def scenario(cls, number: int) -> "NetworkConfig":
        if number == 1:
            return cls()
        if number == 2:
            return cls(
                area_width     = 200.0,
                area_height    = 200.0,
                bs_position    = Point2D(100.0, 200.0),
                initial_energy = 1.0,
                forced_k       = 6,
                ev_checkpoints = (100, 200, 300, 400, 500, 600),
            )
        raise ConfigError(f"Unknown scenario {number}. Known: [1, 2]")

    # ───────────────────────── validation ────────────────────────────
    def validate(self) -> "NetworkConfig":
        problems: list[str] = []

        def need(ok: bool, msg: str):
            if not ok:
                problems.append(msg)

        need(self.area_width > 0 and self.area_height > 0,
             f"area must have positive width and height, got {self.area_width}x{self.area_height}")
        need(self.n_nodes >= 1, f"n_nodes must be >= 1, got {self.n_nodes}")
        need(self.initial_energy > 0, f"initial_energy must be > 0, got {self.initial_energy}")
        need(self.packet_bits >= 0, f"packet_bits must be >= 0, got {self.packet_bits}")
        need(self.control_bits >= 0, f"control_bits must be >= 0, got {self.control_bits}")
        for name in ("e_elec", "eps_fs", "eps_mp", "e_da"):
            need(getattr(self, name) > 0, f"{name} must be > 0, got {getattr(self, name)}")
        need(0 < self.aggregation_ratio_c <= 1,
             f"aggregation_ratio_c must be in (0, 1], got {self.aggregation_ratio_c}")
        need(self.beta > 0, f"beta must be > 0, got {self.beta}")
        need(0 < self.dc_neighbor_fraction < 1,
             f"dc_neighbor_fraction must be in (0, 1), got {self.dc_neighbor_fraction}")
        need(self.kde_bandwidth == "auto" or (isinstance(self.kde_bandwidth, float) and self.kde_bandwidth > 0),
             f"kde_bandwidth must be 'auto' or > 0, got {self.kde_bandwidth!r}")
        need(self.density_method in DENSITY_METHODS,
             f"density_method must be one of {list(DENSITY_METHODS)}, got {self.density_method!r}")
        need(self.forced_k is None or self.forced_k >= 1, f"forced_k must be >= 1, got {self.forced_k}")
        need(0 <= self.reassign_threshold <= 1,
             f"reassign_threshold must be in [0, 1], got {self.reassign_threshold}")
        need(self.convergence_eps > 0, f"convergence_eps must be > 0, got {self.convergence_eps}")
        need(self.r_max >= 1, f"r_max must be >= 1, got {self.r_max}")
        need(self.ch_constant >= 1, f"ch_constant must be >= 1, got {self.ch_constant}")
        need(0 < self.switch_threshold < 1, f"switch_threshold must be in (0, 1), got {self.switch_threshold}")
        need(self.max_comm_range > 0, f"max_comm_range must be > 0, got {self.max_comm_range}")
        need(0 < self.death_fraction_for_lnd <= 1,
             f"death_fraction_for_lnd must be in (0, 1], got {self.death_fraction_for_lnd}")
        need(self.max_rounds >= 1, f"max_rounds must be >= 1, got {self.max_rounds}")
        need(self.rng_seed >= 0, f"rng_seed must be >= 0, got {self.rng_seed}")
        need(all(c >= 1 for c in self.ev_checkpoints)
             and all(a < b for a, b in zip(self.ev_checkpoints, self.ev_checkpoints[1:])),
             f"ev_checkpoints must be positive and strictly increasing, got {list(self.ev_checkpoints)}")

        if problems:
            raise ConfigError("invalid configuration: " + "; ".join(problems))
        return self


def lnd_alive_limit(n: int, death_fraction: float) -> int:
    # 1e-9 keeps 0.85 * 100 from rounding up to 86
    return n - math.ceil(death_fraction * n - 1e-9)


def load_config(path: str | Path | None = None, overrides: Optional[Mapping[str, Any]] = None) -> NetworkConfig:
    """Defaults, then the YAML file (if any), then non-None overrides; validated."""
    mapping: Dict[str, Any] = dict(load_yaml(path)) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            mapping[key] = value
    return NetworkConfig.from_mapping(mapping).validate()


# ─────────────────────────── coercion helpers ───────────────────────────
def _to_float(name: str, raw: Any) -> float:
    if isinstance(raw, bool):
        raise ConfigError(f"{name}: expected a number, got {raw!r}")
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{name}: must be finite, got {raw!r}")
    return value


def _to_int(name: str, raw: Any) -> int:
    if isinstance(raw, bool):
        raise ConfigError(f"{name}: expected an integer, got {raw!r}")
    if isinstance(raw, int):
        return raw
    value = _to_float(name, raw)
    if not value.is_integer():
        raise ConfigError(f"{name}: expected an integer, got {raw!r}")
    return int(value)


def _to_bool(name: str, raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in {"true", "yes", "on", "1"}:
        return True
    if text in {"false", "no", "off", "0"}:
        return False
    raise ConfigError(f"{name}: expected a boolean, got {raw!r}")


def _to_point(name: str, raw: Any) -> Point2D:
    if isinstance(raw, Point2D):
        return raw
    if isinstance(raw, str):
        raw = [part for part in raw.replace("(", "").replace(")", "").split(",")]
    try:
        x, y = raw
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected two coordinates, got {raw!r}") from None
    return Point2D(_to_float(name, x), _to_float(name, y))


def _to_bandwidth(name: str, raw: Any) -> Union[float, str]:
    if isinstance(raw, str) and raw.strip().lower() == "auto":
        return "auto"
    return _to_float(name, raw)


def _to_method(name: str, raw: Any) -> str:
    return str(raw).strip().lower()


def _to_optional_int(name: str, raw: Any) -> Optional[int]:
    if raw is None or (isinstance(raw, str) and raw.strip().lower() in {"", "none", "null", "auto"}):
        return None
    return _to_int(name, raw)


def _to_checkpoints(name: str, raw: Any) -> Tuple[int, ...]:
    if isinstance(raw, str):
        raw = [part for part in raw.split(",") if part.strip()]
    try:
        return tuple(_to_int(name, v) for v in raw)
    except TypeError:
        raise ConfigError(f"{name}: expected a list of rounds, got {raw!r}") from None


_COERCE: Dict[str, Callable[[str, Any], Any]] = {
    "area_width":             _to_float,
    "area_height":            _to_float,
    "bs_position":            _to_point,
    "n_nodes":                _to_int,
    "initial_energy":         _to_float,
    "packet_bits":            _to_int,
    "control_bits":           _to_int,
    "e_elec":                 _to_float,
    "eps_fs":                 _to_float,
    "eps_mp":                 _to_float,
    "e_da":                   _to_float,
    "aggregation_ratio_c":    _to_float,
    "beta":                   _to_float,
    "dc_neighbor_fraction":   _to_float,
    "kde_bandwidth":          _to_bandwidth,
    "density_method":         _to_method,
    "forced_k":               _to_optional_int,
    "reassign_threshold":     _to_float,
    "convergence_eps":        _to_float,
    "r_max":                  _to_int,
    "ch_constant":            _to_int,
    "switch_threshold":       _to_float,
    "lone_ch_transmits":      _to_bool,
    "ch_includes_own_data":   _to_bool,
    "max_comm_range":         _to_float,
    "death_fraction_for_lnd": _to_float,
    "max_rounds":             _to_int,
    "rng_seed":               _to_int,
    "ev_checkpoints":         _to_checkpoints,
}

"""Configuration types and JSON I/O for the LTE IoT energy model.

Units are fixed across the package: times in milliseconds (one LTE subframe
is 1 ms), powers in milliwatts, message sizes in bytes, distances in
kilometres. Energies derived from these are microjoules (mW x ms).

Defaults describe a typical macro-cell small-data deployment: 10 s
inactivity timer, 200 ms DRX inactivity window, 80+4 ms long DRX cycles,
36-byte QPSK resource-block pairs, and open-loop uplink power control with
a -100 dBm target at 0.7 km.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path


class ConfigError(ValueError):
    """A configuration value violates a model invariant."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class Procedure(str, Enum):
    """Transmission procedure used to deliver small uplink data packets."""

    SR = "sr"  # legacy service request: full RRC setup, AS security, reconfiguration
    CP = "cp"  # control-plane optimization: data rides NAS signalling, early release
    UP = "up"  # user-plane optimization: RRC context suspend/resume


# Combined UE+eNB processing delay (ms) to complete the connection-request
# exchange, per procedure. SR pays for AS security and RRC reconfiguration.
T_CR_RX_MS = {Procedure.SR: 41.0, Procedure.CP: 16.0, Procedure.UP: 16.0}

# Arrival-rate x inactivity-timer products above this make the release
# probability underflow to zero and the connected phase never terminates.
_MAX_LAMBDA_TI = 690.0


def _require(cond: bool, key: str, message: str) -> None:
    if not cond:
        raise ConfigError(key, message)


@dataclass(frozen=True)
class TrafficModel:
    """Poisson uplink traffic with mean inter-arrival time ``iat_ms``."""

    iat_ms: float

    def __post_init__(self):
        _require(self.iat_ms > 0, "iat_ms", "must be > 0")

    @property
    def lambda_app(self) -> float:
        """Arrival rate in packets per millisecond (0.0 for infinite IAT)."""
        return 0.0 if math.isinf(self.iat_ms) else 1.0 / self.iat_ms


@dataclass(frozen=True)
class TimerConfig:
    """Connected-mode and access timers, all in milliseconds.

    t_i, t_drxi, t_lc and t_ond bound subframe-indexed waits and must be
    whole milliseconds; t_pre, t_ra_rx and t_wait only scale energies.
    """

    t_i: float = 10000
    t_drxi: float = 200
    t_lc: float = 80
    t_ond: float = 4
    t_pre: float = 2.5
    t_ra_rx: float = 10.0
    t_wait: float = 54.0

    def __post_init__(self):
        for key in ("t_i", "t_drxi", "t_lc", "t_ond", "t_pre", "t_ra_rx", "t_wait"):
            _require(getattr(self, key) >= 0, key, "must be >= 0")
        for key in ("t_i", "t_drxi", "t_lc", "t_ond"):
            v = getattr(self, key)
            _require(float(v).is_integer(), key, "must be a whole number of ms")
        _require(self.t_i >= self.t_drxi, "t_i", "must be >= t_drxi")
        _require(self.t_lc + self.t_ond > 0, "t_lc", "t_lc + t_ond must be > 0")


@dataclass(frozen=True)
class PowerLevels:
    """Device power draw (mW) in the four radio states."""

    p_s: float = 0.03
    p_i: float = 10.0
    p_rx: float = 100.0
    p_tx_max: float = 200.0

    def __post_init__(self):
        _require(0 < self.p_s, "p_s", "must be > 0")
        _require(self.p_s < self.p_i, "p_i", "must be > p_s")
        _require(self.p_i < self.p_rx, "p_rx", "must be > p_i")
        _require(self.p_rx <= self.p_tx_max, "p_tx_max", "must be >= p_rx")


@dataclass(frozen=True)
class MessageSizes:
    """Uplink message payload sizes in bytes.

    b_comp_cp and b_data_cp are the control-plane variants that embed the
    data payload in signalling, so they cannot be smaller than b_data.
    """

    b_rbp: int = 36
    b_req: int = 7
    b_comp: int = 20
    b_s_comp: int = 13
    b_r_ul: int = 10
    b_data: int = 100
    b_comp_cp: int = 129
    b_data_cp: int = 120

    def __post_init__(self):
        for key in ("b_rbp", "b_req", "b_comp", "b_s_comp", "b_r_ul",
                    "b_data", "b_comp_cp", "b_data_cp"):
            _require(getattr(self, key) > 0, key, "must be > 0")
        _require(self.b_comp_cp >= self.b_data, "b_comp_cp", "must be >= b_data")
        _require(self.b_data_cp >= self.b_data, "b_data_cp", "must be >= b_data")


@dataclass(frozen=True)
class AccessConfig:
    """Random-access retry, backoff and failure-probability parameters."""

    m: int = 9
    w_c: int = 20
    p_c: float = 0.0
    p_e: float = 0.0
    frag_threshold_rbp: int = 6

    def __post_init__(self):
        _require(isinstance(self.m, int) and self.m >= 0, "m", "must be an integer >= 0")
        _require(isinstance(self.w_c, int) and self.w_c >= 1, "w_c", "must be an integer >= 1")
        _require(0 <= self.p_c < 1, "p_c", "must be in [0, 1)")
        _require(0 <= self.p_e < 1, "p_e", "must be in [0, 1)")
        _require(self.frag_threshold_rbp >= 1, "frag_threshold_rbp", "must be >= 1")


@dataclass(frozen=True)
class RadioLinkConfig:
    """Uplink power-control and pathloss parameters.

    p_rbp_mw / p_pre_mw, when set, bypass the power-control computation and
    fix the per-RB-pair and preamble transmit powers directly.
    """

    distance_km: float = 0.7
    p0_pusch_dbm: float = -100.0
    alpha: float = 1.0
    delta_tf_db: float = 0.0
    f_c_db: float = 0.0
    preamble_initial_rtp_dbm: float = -100.0
    delta_pre_db: float = 0.0
    ramping_step_db: float = 0.0
    pathloss_intercept_db: float = 120.9
    pathloss_slope: float = 37.6
    ramp_across_attempts: bool = False
    p_rbp_mw: float | None = None
    p_pre_mw: float | None = None

    def __post_init__(self):
        _require(self.distance_km > 0, "distance_km", "must be > 0")
        _require(0 <= self.alpha <= 1, "alpha", "must be in [0, 1]")
        if self.p_rbp_mw is not None:
            _require(self.p_rbp_mw > 0, "p_rbp_mw", "must be > 0 when set")
        if self.p_pre_mw is not None:
            _require(self.p_pre_mw > 0, "p_pre_mw", "must be > 0 when set")


@dataclass(frozen=True)
class ModelConfig:
    """Complete model input: procedure, traffic, timers, powers, sizes."""

    procedure: Procedure = Procedure.SR
    traffic: TrafficModel = field(default_factory=lambda: TrafficModel(10000.0))
    timers: TimerConfig = field(default_factory=TimerConfig)
    power: PowerLevels = field(default_factory=PowerLevels)
    sizes: MessageSizes = field(default_factory=MessageSizes)
    access: AccessConfig = field(default_factory=AccessConfig)
    radio: RadioLinkConfig = field(default_factory=RadioLinkConfig)
    battery_wh: float = 5.0

    def __post_init__(self):
        _require(self.battery_wh > 0, "battery_wh", "must be > 0")
        _require(self.traffic.lambda_app * self.timers.t_i <= _MAX_LAMBDA_TI,
                 "iat_ms", f"iat_ms/t_i ratio too small: lambda*t_i must be <= {_MAX_LAMBDA_TI}")

    @property
    def t_cr_rx(self) -> float:
        return T_CR_RX_MS[self.procedure]

    def with_(self, *, procedure=None, iat_ms=None, p_c=None, p_e=None) -> "ModelConfig":
        """Convenience copy with the most commonly swept fields replaced."""
        cfg = self
        if procedure is not None:
            cfg = replace(cfg, procedure=Procedure(procedure))
        if iat_ms is not None:
            cfg = replace(cfg, traffic=TrafficModel(float(iat_ms)))
        if p_c is not None or p_e is not None:
            acc = replace(cfg.access,
                          p_c=cfg.access.p_c if p_c is None else float(p_c),
                          p_e=cfg.access.p_e if p_e is None else float(p_e))
            cfg = replace(cfg, access=acc)
        return cfg

    # --- JSON schema -----------------------------------------------------
    # Flat keys mirror the model symbols in lowercase snake form; "radio"
    # is a nested object. Missing keys take the defaults above.

    def to_json_dict(self) -> dict:
        d = {
            "procedure": self.procedure.value,
            "iat_ms": self.traffic.iat_ms,
            "battery_wh": self.battery_wh,
        }
        for key in ("t_i", "t_drxi", "t_lc", "t_ond", "t_pre", "t_ra_rx", "t_wait"):
            d[key] = getattr(self.timers, key)
        for key in ("p_s", "p_i", "p_rx", "p_tx_max"):
            d[key] = getattr(self.power, key)
        for key in ("b_rbp", "b_req", "b_comp", "b_s_comp", "b_r_ul",
                    "b_data", "b_comp_cp", "b_data_cp"):
            d[key] = getattr(self.sizes, key)
        for key in ("m", "w_c", "p_c", "p_e", "frag_threshold_rbp"):
            d[key] = getattr(self.access, key)
        d["radio"] = {k: getattr(self.radio, k) for k in _RADIO_KEYS}
        return d

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelConfig":
        if not isinstance(data, dict):
            raise ConfigError("<root>", "configuration document must be a JSON object")
        known = set(_FLAT_KEYS) | {"radio"}
        for key in data:
            if key not in known:
                raise ConfigError(key, "unknown configuration key")
        radio_data = data.get("radio", {})
        if not isinstance(radio_data, dict):
            raise ConfigError("radio", "must be a JSON object")
        for key in radio_data:
            if key not in _RADIO_KEYS:
                raise ConfigError(f"radio.{key}", "unknown configuration key")

        def get(key):
            return data.get(key, _DEFAULTS[key])

        def getr(key):
            return radio_data.get(key, _RADIO_DEFAULTS[key])

        try:
            procedure = Procedure(str(get("procedure")).lower())
        except ValueError:
            raise ConfigError("procedure", "must be one of sr, cp, up") from None
        return cls(
            procedure=procedure,
            traffic=TrafficModel(float(get("iat_ms"))),
            timers=TimerConfig(*(get(k) for k in ("t_i", "t_drxi", "t_lc", "t_ond",
                                                  "t_pre", "t_ra_rx", "t_wait"))),
            power=PowerLevels(*(get(k) for k in ("p_s", "p_i", "p_rx", "p_tx_max"))),
            sizes=MessageSizes(*(int(get(k)) for k in ("b_rbp", "b_req", "b_comp",
                                                       "b_s_comp", "b_r_ul", "b_data",
                                                       "b_comp_cp", "b_data_cp"))),
            access=AccessConfig(m=int(get("m")), w_c=int(get("w_c")),
                                p_c=float(get("p_c")), p_e=float(get("p_e")),
                                frag_threshold_rbp=int(get("frag_threshold_rbp"))),
            radio=RadioLinkConfig(**{k: getr(k) for k in _RADIO_KEYS}),
            battery_wh=float(get("battery_wh")),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ModelConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(str(path), f"malformed JSON ({e.msg} at line {e.lineno})") from None
        return cls.from_json_dict(data)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")


_DEFAULTS = {
    "procedure": "sr",
    "iat_ms": 10000.0,
    "t_i": 10000, "t_drxi": 200, "t_lc": 80, "t_ond": 4,
    "t_pre": 2.5, "t_ra_rx": 10.0, "t_wait": 54.0,
    "p_s": 0.03, "p_i": 10.0, "p_rx": 100.0, "p_tx_max": 200.0,
    "b_rbp": 36, "b_req": 7, "b_comp": 20, "b_s_comp": 13, "b_r_ul": 10,
    "b_data": 100, "b_comp_cp": 129, "b_data_cp": 120,
    "m": 9, "w_c": 20, "p_c": 0.0, "p_e": 0.0, "frag_threshold_rbp": 6,
    "battery_wh": 5.0,
}
_FLAT_KEYS = tuple(_DEFAULTS)

_RADIO_DEFAULTS = {
    "distance_km": 0.7,
    "p0_pusch_dbm": -100.0,
    "alpha": 1.0,
    "delta_tf_db": 0.0,
    "f_c_db": 0.0,
    "preamble_initial_rtp_dbm": -100.0,
    "delta_pre_db": 0.0,
    "ramping_step_db": 0.0,
    "pathloss_intercept_db": 120.9,
    "pathloss_slope": 37.6,
    "ramp_across_attempts": False,
    "p_rbp_mw": None,
    "p_pre_mw": None,
}
_RADIO_KEYS = tuple(_RADIO_DEFAULTS)


def table_defaults(procedure: Procedure | str = Procedure.SR,
                   iat_ms: float = 10000.0,
                   p_c: float = 0.0,
                   p_e: float = 0.0) -> ModelConfig:
    """Default configuration with the commonly swept fields overridden."""
    return ModelConfig().with_(procedure=procedure, iat_ms=iat_ms, p_c=p_c, p_e=p_e)

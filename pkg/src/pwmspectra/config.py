"""Inverter operating point and the modulation index derived from it."""

from __future__ import annotations

import math
from dataclasses import dataclass


class ConfigError(ValueError):
    """Invalid inverter parameters."""


class OvermodulationError(ConfigError):
    """Requested fundamental exceeds the linear modulation range (M > 1)."""


@dataclass(frozen=True)
class InverterConfig:
    """Operating point of a single-phase H-bridge on a split DC link.

    u_dc_link    full DC link voltage U_DC [V]
    u_ab_co_rms  intended fundamental at the bridge terminals [V rms]
    f_network    network (fundamental) frequency [Hz]
    f_carrier    triangular carrier frequency [Hz]
    phi_network  fundamental phase [rad]
    phi_carrier  carrier phase [rad]
    """

    u_dc_link: float
    u_ab_co_rms: float
    f_network: float
    f_carrier: float
    phi_network: float = 0.0
    phi_carrier: float = 0.0

    def __post_init__(self) -> None:
        for name in ("u_dc_link", "u_ab_co_rms", "f_network", "f_carrier",
                     "phi_network", "phi_carrier"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if self.u_dc_link <= 0.0:
            raise ConfigError("u_dc_link must be > 0")
        if self.u_ab_co_rms < 0.0:
            raise ConfigError("u_ab_co_rms must be >= 0")
        if self.f_network <= 0.0:
            raise ConfigError("f_network must be > 0")
        if self.f_carrier <= self.f_network:
            raise ConfigError("f_carrier must exceed f_network")
        m = math.sqrt(2.0) * self.u_ab_co_rms / self.u_dc_link
        if m > 1.0:
            raise OvermodulationError(
                f"modulation index {m:.6f} > 1 (overmodulation is not modelled)")

    @property
    def modulation_index(self) -> float:
        """M = sqrt(2) * u_ab_co_rms / u_dc_link, in [0, 1]."""
        return math.sqrt(2.0) * self.u_ab_co_rms / self.u_dc_link

    @property
    def omega_network(self) -> float:
        return 2.0 * math.pi * self.f_network

    @property
    def omega_carrier(self) -> float:
        return 2.0 * math.pi * self.f_carrier

    @property
    def network_period(self) -> float:
        return 1.0 / self.f_network


def modulation_index(cfg: InverterConfig) -> float:
    """Modulation index of a valid config (the config ctor rejects M > 1)."""
    return cfg.modulation_index


def reference_config(phi_network: float = 0.0, phi_carrier: float = 0.0) -> InverterConfig:
    """The 400 V / 230 V / 50 Hz / 1 kHz reference operating point."""
    return InverterConfig(
        u_dc_link=400.0,
        u_ab_co_rms=230.0,
        f_network=50.0,
        f_carrier=1000.0,
        phi_network=phi_network,
        phi_carrier=phi_carrier,
    )

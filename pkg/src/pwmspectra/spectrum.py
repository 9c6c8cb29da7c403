"""Double Fourier series of the switched H-bridge voltage.

The differential voltage decomposes into the intended fundamental plus
carrier-group sidebands: for band order m >= 1 and sideband index n, a
component at 2*m*f_carrier + (2n-1)*f_network with peak amplitude
(2*U_DC/pi) * J_{2n-1}(m*pi*M) / m and an alternating sign (-1)^(m+n-1)
that is folded into the phase.  This module enumerates the components,
evaluates the truncated series in the time domain, and serialises the
component table.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bessel import bessel_j_ladder
from .config import InverterConfig
from .oracle import SampledWaveform

#: table entries with amplitude below this fraction of U_DC are dropped
ZERO_PRUNE_RELATIVE = 1.0e-14

_CSV_COLUMNS = ("m", "n", "frequency_hz", "amplitude_v_peak", "rms_v", "phase_rad", "folded")


def adaptive_k_max(m: int, modulation_index: float) -> int:
    """Smallest sideband count whose tail falls below ~1e-14.

    |J_chi(x)| < 1e-15 once chi > x + 40, so k up to (m*pi*M + 40)/2 covers
    every odd order that can contribute.
    """
    return max(1, math.ceil((m * math.pi * modulation_index + 40.0) / 2.0))


@dataclass(frozen=True)
class TruncationSpec:
    """Series truncation: bands 1..m_max, sidebands n in [-K+1, K].

    n_half_width = None selects the adaptive per-band K; an explicit value
    fixes the same K for every band.  The n range is symmetric under the
    pairing n <-> -n+1, so it maps exactly onto k = 1..K in the emission
    band form.
    """

    m_max: int
    n_half_width: int | None = None

    def __post_init__(self) -> None:
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")
        if self.n_half_width is not None and self.n_half_width < 1:
            raise ValueError("n_half_width must be >= 1 (or None for adaptive)")

    def k_max_for(self, m: int, modulation_index: float) -> int:
        if self.n_half_width is not None:
            return self.n_half_width
        return adaptive_k_max(m, modulation_index)


@dataclass(frozen=True)
class SpectralComponent:
    """One line of the series: folded to frequency >= 0, amplitude >= 0."""

    m: int
    n: int
    frequency: float
    amplitude: float
    phase: float
    folded: bool = False

    @property
    def rms(self) -> float:
        return self.amplitude / math.sqrt(2.0)


def _wrap_phase(phase: float) -> float:
    wrapped = (phase + math.pi) % (2.0 * math.pi) - math.pi
    return math.pi if wrapped == -math.pi else wrapped


def _sideband_bessel(ladder: np.ndarray, n: int) -> float:
    # J_{2n-1} for any integer n from a ladder of non-negative orders
    nu = 2 * n - 1
    if nu >= 0:
        return float(ladder[nu])
    return -float(ladder[-nu])  # J_{-q} = -J_q for odd q


def fundamental_waveform(cfg: InverterConfig, t):
    """Intended fundamental U_DC * M * cos(w_N t + phi_N); peak = sqrt(2)*u_ab_co_rms."""
    t = np.asarray(t, dtype=float)
    value = cfg.u_dc_link * cfg.modulation_index * np.cos(
        cfg.omega_network * t + cfg.phi_network)
    return float(value) if value.ndim == 0 else value


def band_sum_original(cfg: InverterConfig, m: int, k_max: int, t):
    """Inner sideband sum of band m in the original (n-indexed) form.

    Sums n from -k_max+1 to k_max of
    J_{2n-1}(m*pi*M) / (m * (-1)^(m+n-1)) * cos(2m[w_c t + phi_c] + (2n-1)[w_N t + phi_N]).
    """
    if m < 1 or k_max < 1:
        raise ValueError("m and k_max must be >= 1")
    t = np.asarray(t, dtype=float)
    x = m * math.pi * cfg.modulation_index
    ladder = bessel_j_ladder(2 * k_max - 1, x)
    alpha = 2.0 * m * (cfg.omega_carrier * t + cfg.phi_carrier)
    beta = cfg.omega_network * t + cfg.phi_network
    total = np.zeros_like(t)
    for n in range(-k_max + 1, k_max + 1):
        sign = 1.0 if (m + n - 1) % 2 == 0 else -1.0
        coeff = _sideband_bessel(ladder, n) * sign / m
        total = total + coeff * np.cos(alpha + (2 * n - 1) * beta)
    return float(total) if total.ndim == 0 else total


def shd_original(cfg: InverterConfig, trunc: TruncationSpec, t):
    """Truncated supraharmonic distortion in the original double-sum form."""
    t = np.asarray(t, dtype=float)
    total = np.zeros_like(t)
    m_index = cfg.modulation_index
    if m_index == 0.0:
        return float(total) if total.ndim == 0 else total
    for m in range(1, trunc.m_max + 1):
        total = total + band_sum_original(cfg, m, trunc.k_max_for(m, m_index), t)
    total = (2.0 * cfg.u_dc_link / math.pi) * total
    return float(total) if total.ndim == 0 else total


def component_table(cfg: InverterConfig, trunc: TruncationSpec) -> list[SpectralComponent]:
    """All non-negligible components within the truncation, sorted by frequency."""
    u_dc = cfg.u_dc_link
    m_index = cfg.modulation_index
    prune = ZERO_PRUNE_RELATIVE * u_dc
    out: list[SpectralComponent] = []
    for m in range(1, trunc.m_max + 1):
        k_max = trunc.k_max_for(m, m_index)
        ladder = bessel_j_ladder(2 * k_max - 1, m * math.pi * m_index)
        for n in range(-k_max + 1, k_max + 1):
            sign = 1.0 if (m + n - 1) % 2 == 0 else -1.0
            signed_amp = (2.0 * u_dc / math.pi) * _sideband_bessel(ladder, n) * sign / m
            amplitude = abs(signed_amp)
            if amplitude < prune:
                continue
            frequency = 2.0 * m * cfg.f_carrier + (2 * n - 1) * cfg.f_network
            phase = 2.0 * m * cfg.phi_carrier + (2 * n - 1) * cfg.phi_network
            if signed_amp < 0.0:
                phase += math.pi
            folded = frequency < 0.0
            if folded:
                frequency = -frequency
                phase = -phase
            out.append(SpectralComponent(m=m, n=n, frequency=frequency,
                                         amplitude=amplitude,
                                         phase=_wrap_phase(phase), folded=folded))
    out.sort(key=lambda c: (c.frequency, c.m, c.n))
    return out


def synthesize_total(cfg: InverterConfig, trunc: TruncationSpec, times) -> SampledWaveform:
    """Fundamental plus truncated distortion, evaluated on a uniform grid."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("times must contain at least two samples")
    steps = np.diff(times)
    dt = steps[0]
    if dt <= 0.0 or np.max(np.abs(steps - dt)) > 1e-9 * dt:
        raise ValueError("times must be uniformly spaced and increasing")
    samples = fundamental_waveform(cfg, times) + shd_original(cfg, trunc, times)
    return SampledWaveform(sample_rate=1.0 / dt, start_time=float(times[0]), samples=samples)


# ---- component table serialisation -------------------------------------

def _format(value: float) -> str:
    return format(value, ".17g")


def components_to_csv(components: list[SpectralComponent], path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for c in components:
            writer.writerow([c.m, c.n, _format(c.frequency), _format(c.amplitude),
                             _format(c.rms), _format(c.phase), int(c.folded)])


def components_from_csv(path) -> list[SpectralComponent]:
    out: list[SpectralComponent] = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(SpectralComponent(
                m=int(row["m"]), n=int(row["n"]),
                frequency=float(row["frequency_hz"]),
                amplitude=float(row["amplitude_v_peak"]),
                phase=float(row["phase_rad"]),
                folded=bool(int(row["folded"]))))
    return out


def components_to_json(components: list[SpectralComponent], path) -> None:
    payload = [{"m": c.m, "n": c.n, "frequency_hz": c.frequency,
                "amplitude_v_peak": c.amplitude, "rms_v": c.rms,
                "phase_rad": c.phase, "folded": c.folded}
               for c in components]
    with Path(path).open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def components_from_json(path) -> list[SpectralComponent]:
    with Path(path).open(encoding="utf-8") as fh:
        payload = json.load(fh)
    return [SpectralComponent(m=item["m"], n=item["n"],
                              frequency=item["frequency_hz"],
                              amplitude=item["amplitude_v_peak"],
                              phase=item["phase_rad"], folded=item["folded"])
            for item in payload]

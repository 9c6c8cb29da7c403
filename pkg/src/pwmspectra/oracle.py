"""Brute-force switched-waveform simulator for the H-bridge.

Both legs compare their (continuous) reference against the same triangular
carrier -- natural sampling, no sample-and-hold anywhere.  Leg b runs on the
negated reference, so the differential output u_ab = u_a - u_b takes values
in {-U_DC, 0, +U_DC}.  Switching instants are located by bisection on the
comparator function; samples then take the value of the interval containing
their timestamp.  The result is the ground truth every spectral formula in
this package is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import InverterConfig

#: switching instants are bisected until the bracket is narrower than this
INSTANT_TOLERANCE = 1.0e-12

#: minimum oversampling of the carrier accepted by simulate_hbridge
MIN_SAMPLES_PER_CARRIER = 50.0


@dataclass(frozen=True, eq=False)
class SampledWaveform:
    """Uniformly sampled real signal.

    Callers are responsible for choosing sample_rate > 2x the highest
    frequency they intend to read off the waveform.
    """

    sample_rate: float
    start_time: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0.0):
            raise ValueError("sample_rate must be positive and finite")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.samples.size) / self.sample_rate


def triangular_carrier(theta):
    """Unit triangular carrier: even, 2*pi-periodic, +1 at 0, -1 at pi."""
    theta = np.asarray(theta, dtype=float)
    wrapped = np.mod(theta + np.pi, 2.0 * np.pi) - np.pi
    value = 1.0 - 2.0 * np.abs(wrapped) / np.pi
    return float(value) if value.ndim == 0 else value


def _comparator(cfg: InverterConfig, ref_sign: float, t):
    ref = ref_sign * cfg.modulation_index * np.cos(cfg.omega_network * np.asarray(t, dtype=float)
                                                   + cfg.phi_network)
    return ref - triangular_carrier(cfg.omega_carrier * np.asarray(t, dtype=float)
                                    + cfg.phi_carrier)


def _bracket_grid(cfg: InverterConfig, duration: float) -> np.ndarray:
    # carrier vertices split the comparator into monotone pieces as long as
    # |d ref/dt| = M*w_N stays below the carrier slope 2*w_c/pi; subdivide
    # when a slow carrier makes that margin thin
    slope_margin = (2.0 * cfg.omega_carrier / np.pi) / max(
        cfg.modulation_index * cfg.omega_network, 1e-300)
    n_sub = 1 if slope_margin > 1.25 else 16
    # vertex times solve w_c t + phi_c = k*pi
    k_lo = math.floor(cfg.phi_carrier / math.pi) - 1
    k_hi = math.ceil((duration * cfg.omega_carrier + cfg.phi_carrier) / math.pi) + 1
    vertices = (np.arange(k_lo, k_hi + 1) * math.pi - cfg.phi_carrier) / cfg.omega_carrier
    if n_sub > 1:
        step = 0.5 / cfg.f_carrier / n_sub
        vertices = (vertices[:, None] + np.arange(n_sub)[None, :] * step).ravel()
    inside = vertices[(vertices > 0.0) & (vertices < duration)]
    return np.unique(np.concatenate(([0.0], inside, [duration])))


def _bisect_events(cfg: InverterConfig, ref_sign: float, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    g_lo = _comparator(cfg, ref_sign, lo)
    while np.max(hi - lo) > INSTANT_TOLERANCE:
        mid = 0.5 * (lo + hi)
        g_mid = _comparator(cfg, ref_sign, mid)
        take_left = (g_lo * g_mid) <= 0.0
        hi = np.where(take_left, mid, hi)
        lo = np.where(take_left, lo, mid)
        g_lo = np.where(take_left, g_lo, g_mid)
    return 0.5 * (lo + hi)


def leg_switching_instants(cfg: InverterConfig, duration: float, leg: str = "a") -> np.ndarray:
    """Comparator zero crossings of one leg in [0, duration), to 1e-12 s."""
    if leg not in ("a", "b"):
        raise ValueError("leg must be 'a' or 'b'")
    ref_sign = 1.0 if leg == "a" else -1.0
    grid = _bracket_grid(cfg, duration)
    g = _comparator(cfg, ref_sign, grid)
    change = np.nonzero(g[:-1] * g[1:] < 0.0)[0]
    if change.size == 0:
        return np.empty(0)
    return _bisect_events(cfg, ref_sign, grid[change], grid[change + 1])


def switching_instants(cfg: InverterConfig, duration: float) -> np.ndarray:
    """Merged instants (both legs) at which u_ab changes level."""
    a = leg_switching_instants(cfg, duration, "a")
    b = leg_switching_instants(cfg, duration, "b")
    return np.sort(np.concatenate((a, b)))


def _leg_levels(cfg: InverterConfig, ref_sign: float, events: np.ndarray,
                duration: float) -> np.ndarray:
    # level on each interval between events, from the comparator sign at the
    # interval midpoints (exact away from the 1e-12 s instants)
    edges = np.concatenate(([0.0], events, [duration]))
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * cfg.u_dc_link
    return np.where(_comparator(cfg, ref_sign, mids) > 0.0, half, -half)


def _check_duration(cfg: InverterConfig, duration: float) -> int:
    periods = duration * cfg.f_network
    if duration <= 0.0 or abs(periods - round(periods)) > 1e-9 * max(1.0, periods):
        raise ValueError("duration must be a whole number of fundamental periods")
    return int(round(periods))


def simulate_hbridge(cfg: InverterConfig, duration: float, sample_rate: float) -> SampledWaveform:
    """Switched differential voltage u_ab sampled on a uniform grid.

    duration must span whole fundamental periods and sample_rate must
    resolve the carrier (>= 50 samples per carrier cycle) and tile the
    duration with a whole number of samples.
    """
    _check_duration(cfg, duration)
    if sample_rate < MIN_SAMPLES_PER_CARRIER * cfg.f_carrier:
        raise ValueError(
            f"sample_rate {sample_rate:g} Hz is below the floor "
            f"{MIN_SAMPLES_PER_CARRIER * cfg.f_carrier:g} Hz (50 samples per carrier cycle)")
    n_float = duration * sample_rate
    n = int(round(n_float))
    if n < 1 or abs(n_float - n) > 1e-6:
        raise ValueError("sample_rate * duration must be a whole number of samples")

    t = np.arange(n) / sample_rate
    u = np.zeros(n)
    for leg, ref_sign in (("a", 1.0), ("b", -1.0)):
        events = leg_switching_instants(cfg, duration, leg)
        levels = _leg_levels(cfg, ref_sign, events, duration)
        idx = np.searchsorted(events, t, side="right")
        u += levels[idx] if ref_sign > 0 else -levels[idx]
    return SampledWaveform(sample_rate=sample_rate, start_time=0.0, samples=u)


def _merged_levels(cfg: InverterConfig, duration: float):
    events = switching_instants(cfg, duration)
    edges = np.concatenate(([0.0], events, [duration]))
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * cfg.u_dc_link
    lev_a = np.where(_comparator(cfg, 1.0, mids) > 0.0, half, -half)
    lev_b = np.where(_comparator(cfg, -1.0, mids) > 0.0, half, -half)
    return edges, lev_a - lev_b


def exact_mean(cfg: InverterConfig, duration: float) -> float:
    """Time average of u_ab from the event list (no sampling grid)."""
    _check_duration(cfg, duration)
    edges, levels = _merged_levels(cfg, duration)
    return float(np.sum(levels * np.diff(edges)) / duration)


def exact_rms(cfg: InverterConfig, duration: float) -> float:
    """RMS of u_ab from the event list (no sampling grid)."""
    _check_duration(cfg, duration)
    edges, levels = _merged_levels(cfg, duration)
    return float(math.sqrt(np.sum(levels**2 * np.diff(edges)) / duration))

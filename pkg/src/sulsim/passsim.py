"""Time-stepped pass simulation driving the SUL controller, plus the coverage,
availability and switching-stability experiments built on top of it.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from sulsim import controller as ctl
from sulsim.controller import Carrier, ControllerConfig, ControllerState
from sulsim.errors import ConfigError
from sulsim.geometry import (
    BeamMode,
    GeometryConfig,
    PassShape,
    build_pass_profile,
    off_boresight_angle,
    slant_range,
    velocity_angle_at_offset,
)
from sulsim.link_budget import (
    PUL_KA_BAND,
    SUL_L_BAND,
    AtmosphericModel,
    CarrierConfig,
    MarginSample,
    carrier_sample,
    check_carrier_pair,
    predicted_snr_db,
)

# Scan resolution and bisection tolerance for minimum-elevation searches.
ELEVATION_GRID_DEG = 0.1
ELEVATION_TOL_DEG = 0.01


class Mode(str, enum.Enum):
    """``PulOnly`` is the baseline that never leaves the primary carrier."""

    PUL_ONLY = "PulOnly"
    SUL_ENABLED = "SulEnabled"


@dataclass(frozen=True)
class ScenarioConfig:
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    pul: CarrierConfig = PUL_KA_BAND
    sul: CarrierConfig = SUL_L_BAND
    atm_model: AtmosphericModel = field(default_factory=AtmosphericModel)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    beam_mode: BeamMode = BeamMode.UE_CENTERED
    noise_sigma_db: float = 0.0
    rng_seed: int = 0
    pass_shape: PassShape = PassShape.ASCEND_ONLY
    sample_step_s: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "beam_mode", BeamMode(self.beam_mode))
        object.__setattr__(self, "pass_shape", PassShape(self.pass_shape))
        if self.pul.name is not Carrier.PUL:
            raise ConfigError("pul.name", "must be PUL")
        if self.sul.name is not Carrier.SUL:
            raise ConfigError("sul.name", "must be SUL")
        check_carrier_pair(self.pul, self.sul)
        if not self.noise_sigma_db >= 0:
            raise ConfigError("noise_sigma_db", "must be >= 0")
        if not self.sample_step_s > 0:
            raise ConfigError("sample_step_s", "must be > 0")
        if isinstance(self.rng_seed, bool) or not isinstance(self.rng_seed, int):
            raise ConfigError("rng_seed", "must be an integer")
        if self.rng_seed < 0:
            raise ConfigError("rng_seed", "must be >= 0")
        if self.beam_mode is BeamMode.NADIR_FIXED:
            for key, carrier in (("pul", self.pul), ("sul", self.sul)):
                if carrier.beamwidth_3db_deg is None:
                    raise ConfigError(
                        f"{key}.beamwidth_3db_deg", "required when beam_mode is NadirFixed"
                    )


@dataclass(frozen=True)
class TraceEntry:
    time_s: float
    sample: MarginSample
    active_carrier: Carrier
    available: bool
    # margins the controller actually saw, after perturbation
    observed_margin_pul_db: float
    observed_margin_sul_db: float


@dataclass(frozen=True)
class PassResult:
    trace: tuple[TraceEntry, ...]
    switch_count: int
    availability_fraction: float
    availability_cdf: tuple[tuple[float, float], ...]
    mode: Mode = Mode.SUL_ENABLED


@dataclass(frozen=True)
class SweepRow:
    hysteresis_db: float
    mean_switches: float
    p95_switches: float


def pass_samples(scenario: ScenarioConfig) -> list[tuple[float, MarginSample]]:
    """Unperturbed link evaluation at every time step of the scenario's pass."""
    geo = scenario.geometry
    profile = build_pass_profile(geo, scenario.pass_shape, scenario.sample_step_s)
    snr_req = scenario.controller.snr_req_db
    out = []
    for t, el in profile.samples:
        phi = velocity_angle_at_offset(geo, t - profile.peak_time_s)
        off = off_boresight_angle(geo, el, scenario.beam_mode)
        pul = carrier_sample(scenario.pul, scenario.atm_model, el, off, geo, snr_req, phi)
        sul = carrier_sample(scenario.sul, scenario.atm_model, el, off, geo, snr_req, phi)
        out.append((t, MarginSample(el, slant_range(geo, el), phi, pul, sul)))
    return out


def _drive(
    samples: Sequence[tuple[float, MarginSample]],
    cfg: ControllerConfig,
    mode: Mode,
    noise_sigma_db: float,
    seed: int,
) -> PassResult:
    n = len(samples)
    if noise_sigma_db > 0:
        # both carriers drawn every step so the noise path is independent of
        # controller decisions and shared across hysteresis settings
        noise = np.random.default_rng(seed).normal(0.0, noise_sigma_db, size=(n, 2))
    else:
        noise = np.zeros((n, 2))

    trace = []
    state: Optional[ControllerState] = None
    for i, (t, s) in enumerate(samples):
        mp = s.pul.margin_db + float(noise[i, 0])
        ms = s.sul.margin_db + float(noise[i, 1])
        if mode is Mode.PUL_ONLY:
            active = Carrier.PUL
        else:
            if state is None:
                state = ControllerState(ctl.initial_carrier(cfg, mp, ms))
            else:
                state = ctl.step(state, cfg, mp, ms)
            active = state.active_carrier
        available = s.carrier(active).margin_db >= 0.0
        trace.append(TraceEntry(t, s, active, available, mp, ms))

    switches = state.switch_count if state is not None else 0
    n_avail = sum(e.available for e in trace)
    cdf = _cdf([(e.sample.elevation_deg, e.available) for e in trace])
    return PassResult(tuple(trace), switches, n_avail / n, cdf, mode)


def run_pass(
    scenario: ScenarioConfig,
    mode: Mode = Mode.SUL_ENABLED,
    seed: Optional[int] = None,
) -> PassResult:
    """Simulate one pass of ``scenario``.

    Each step evaluates both carriers' margins, adds independent Gaussian
    noise of ``noise_sigma_db`` to what the controller sees, and advances the
    controller.  A step counts as available when the active carrier's true
    (unperturbed) margin is non-negative.  ``seed`` overrides
    ``scenario.rng_seed``.
    """
    mode = Mode(mode)
    seed = scenario.rng_seed if seed is None else seed
    return _drive(
        pass_samples(scenario), scenario.controller, mode, scenario.noise_sigma_db, seed
    )


def _cdf(points: Sequence[tuple[float, bool]]) -> tuple[tuple[float, float], ...]:
    total = sum(avail for _, avail in points)
    if total == 0:
        return ()
    counts: dict[float, int] = {}
    for el, avail in points:
        counts[el] = counts.get(el, 0) + int(avail)
    out = []
    running = 0
    for el in sorted(counts):
        running += counts[el]
        out.append((el, running / total))
    return tuple(out)


def availability_cdf(result: PassResult) -> list[tuple[float, float]]:
    """Cumulative share of available samples at or below each elevation.

    Normalised by the number of available samples, so the curve ends at 1.
    Empty when no sample was available.
    """
    if not result.trace:
        raise ValueError("empty trace")
    return list(_cdf([(e.sample.elevation_deg, e.available) for e in result.trace]))


def cdf_onset_deg(cdf: Sequence[tuple[float, float]]) -> Optional[float]:
    """Lowest elevation at which the availability CDF becomes positive."""
    for el, frac in cdf:
        if frac > 0:
            return el
    return None


def best_snr_db(scenario: ScenarioConfig, elevation_deg: float, mode: Mode) -> float:
    """Best predicted SNR the mode can use at ``elevation_deg``."""
    geo = scenario.geometry
    off = off_boresight_angle(geo, elevation_deg, scenario.beam_mode)
    snr = predicted_snr_db(scenario.pul, scenario.atm_model, elevation_deg, off, geo)
    if Mode(mode) is Mode.SUL_ENABLED:
        snr = max(snr, predicted_snr_db(scenario.sul, scenario.atm_model, elevation_deg, off, geo))
    return snr


@functools.lru_cache(maxsize=64)
def _snr_grid(scenario: ScenarioConfig, mode: Mode) -> tuple[np.ndarray, np.ndarray]:
    lo = scenario.geometry.min_elevation_deg
    n = int(round((90.0 - lo) / ELEVATION_GRID_DEG))
    grid = np.array([lo + i * ELEVATION_GRID_DEG for i in range(n)] + [90.0])
    snr = np.array([best_snr_db(scenario, float(el), mode) for el in grid])
    return grid, snr


def min_elevation_for_target(
    scenario: ScenarioConfig, target_snr_db: float, mode: Mode
) -> Optional[float]:
    """Lowest elevation at which ``mode`` reaches ``target_snr_db``.

    Scans elevation in 0.1 deg steps from the minimum elevation, then
    bisects the first feasible step down to 0.01 deg.  Returns ``None`` when
    even zenith falls short.
    """
    if not math.isfinite(target_snr_db):
        raise ValueError(f"target SNR must be finite, got {target_snr_db!r}")
    mode = Mode(mode)
    grid, snr = _snr_grid(scenario, mode)
    hits = np.flatnonzero(snr - target_snr_db >= 0.0)
    if hits.size == 0:
        return None
    i = int(hits[0])
    if i == 0:
        return float(grid[0])
    a, b = float(grid[i - 1]), float(grid[i])
    while b - a > ELEVATION_TOL_DEG:
        mid = 0.5 * (a + b)
        if best_snr_db(scenario, mid, mode) - target_snr_db >= 0.0:
            b = mid
        else:
            a = mid
    return b


def hysteresis_sweep(
    scenario: ScenarioConfig,
    hysteresis_values_db: Sequence[float],
    seeds: Sequence[int],
) -> list[SweepRow]:
    """Switch-count statistics per hysteresis margin over a set of seeds.

    The pass itself is evaluated once; only the controller is re-run for
    each (hysteresis, seed) combination.
    """
    if not hysteresis_values_db:
        raise ValueError("hysteresis_values_db must not be empty")
    if not seeds:
        raise ValueError("seeds must not be empty")
    samples = pass_samples(scenario)
    rows = []
    for dh in hysteresis_values_db:
        cfg = replace(scenario.controller, hysteresis_margin_db=dh)
        counts = np.array(
            [
                _drive(samples, cfg, Mode.SUL_ENABLED, scenario.noise_sigma_db, s).switch_count
                for s in seeds
            ]
        )
        rows.append(SweepRow(float(dh), float(counts.mean()), float(np.percentile(counts, 95))))
    return rows


def derive_seeds(rng_seed: int, n: int) -> list[int]:
    """``n`` distinct child seeds derived deterministically from ``rng_seed``."""
    return [int(s) for s in np.random.SeedSequence(rng_seed).generate_state(n, dtype=np.uint32)]

"""Elevation, slant range and pass-timing geometry for a single UE and satellite.

All angles are in degrees and all lengths in kilometres.  The orbit is
circular and the Earth does not rotate, so a pass is fully described by the
orbital altitude and the peak elevation seen from the UE.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from sulsim.errors import ConfigError, DomainError

EARTH_RADIUS_KM = 6371.0
MU_EARTH_KM3_S2 = 398600.4418

# Below this, sin(central angle) is treated as zero (satellite overhead).
_ZENITH_EPS = 1e-12


class BeamMode(str, enum.Enum):
    """How the satellite beam boresight is pointed relative to the UE."""

    UE_CENTERED = "UeCentered"
    NADIR_FIXED = "NadirFixed"


class PassShape(str, enum.Enum):
    ASCEND_ONLY = "AscendOnly"
    FULL_PASS = "FullPass"


@dataclass(frozen=True)
class GeometryConfig:
    """Orbit and visibility parameters of the simulated pass."""

    altitude_km: float = 600.0
    earth_radius_km: float = EARTH_RADIUS_KM
    min_elevation_deg: float = 10.0
    max_elevation_deg: float = 90.0

    def __post_init__(self) -> None:
        if not self.earth_radius_km > 0:
            raise ConfigError("earth_radius_km", "must be > 0")
        if not self.altitude_km > 0:
            raise ConfigError("altitude_km", "must be > 0")
        if not 0 < self.min_elevation_deg < self.max_elevation_deg:
            raise ConfigError(
                "min_elevation_deg",
                "must satisfy 0 < min_elevation_deg < max_elevation_deg",
            )
        if not self.max_elevation_deg <= 90:
            raise ConfigError("max_elevation_deg", "must be <= 90")

    @property
    def orbit_radius_km(self) -> float:
        return self.earth_radius_km + self.altitude_km

    @property
    def angular_rate_rad_s(self) -> float:
        """Orbital angular rate of a circular orbit at this altitude."""
        return math.sqrt(MU_EARTH_KM3_S2 / self.orbit_radius_km**3)


@dataclass(frozen=True)
class PassProfile:
    """Uniformly time-sampled elevation history of one pass.

    ``peak_time_s`` is the instant of maximum elevation; for ``AscendOnly``
    it coincides with the last sample.
    """

    samples: tuple[tuple[float, float], ...]
    shape: PassShape
    sample_step_s: float
    peak_time_s: float

    @property
    def times_s(self) -> list[float]:
        return [t for t, _ in self.samples]

    @property
    def elevations_deg(self) -> list[float]:
        return [e for _, e in self.samples]

    @property
    def duration_s(self) -> float:
        return self.samples[-1][0] - self.samples[0][0]


def _check_elevation(elevation_deg: float) -> None:
    if not 0.0 <= elevation_deg <= 90.0:
        raise DomainError(f"elevation must lie in [0, 90] deg, got {elevation_deg!r}")


def slant_range(cfg: GeometryConfig, elevation_deg: float) -> float:
    """Line-of-sight distance from the UE to the satellite in km.

    Raises
    ------
    DomainError
        If ``elevation_deg`` is outside [0, 90].
    """
    _check_elevation(elevation_deg)
    re = cfg.earth_radius_km
    rs = cfg.orbit_radius_km
    el = math.radians(elevation_deg)
    if elevation_deg == 90.0:
        # cos(pi/2) is not exactly zero in floating point
        return rs - re
    return math.sqrt(rs**2 - (re * math.cos(el)) ** 2) - re * math.sin(el)


def off_nadir_angle(cfg: GeometryConfig, elevation_deg: float) -> float:
    """Angle at the satellite between nadir and the UE direction."""
    _check_elevation(elevation_deg)
    ratio = cfg.earth_radius_km / cfg.orbit_radius_km
    return math.degrees(math.asin(ratio * math.cos(math.radians(elevation_deg))))


def off_boresight_angle(
    cfg: GeometryConfig, elevation_deg: float, beam_mode: BeamMode
) -> float:
    """Angle between the beam boresight and the UE direction.

    A ``UeCentered`` beam tracks the UE so the angle is always zero; a
    ``NadirFixed`` beam points straight down so the angle is the off-nadir
    angle of the UE.
    """
    _check_elevation(elevation_deg)
    mode = BeamMode(beam_mode)
    if mode is BeamMode.UE_CENTERED:
        return 0.0
    return off_nadir_angle(cfg, elevation_deg)


def central_angle_from_elevation(cfg: GeometryConfig, elevation_deg: float) -> float:
    """Earth-central angle between the UE and the sub-satellite point."""
    return 90.0 - elevation_deg - off_nadir_angle(cfg, elevation_deg)


def _elevation_at(cfg: GeometryConfig, central_angle_rad: float) -> float:
    ratio = cfg.earth_radius_km / cfg.orbit_radius_km
    s = math.sin(central_angle_rad)
    if abs(s) < _ZENITH_EPS:
        return 90.0
    el = math.degrees(math.atan2(math.cos(central_angle_rad) - ratio, abs(s)))
    return min(max(el, 0.0), 90.0)


def elevation_from_central_angle(cfg: GeometryConfig, central_angle_deg: float) -> float:
    """Elevation seen by the UE when the sub-satellite point is ``central_angle_deg`` away.

    The result is clamped to [0, 90]; central angles beyond the horizon map
    to zero elevation.
    """
    if not central_angle_deg > 0:
        raise DomainError(f"central angle must be > 0 deg, got {central_angle_deg!r}")
    if central_angle_deg >= 180:
        raise DomainError(f"central angle must be < 180 deg, got {central_angle_deg!r}")
    return _elevation_at(cfg, math.radians(central_angle_deg))


def pass_half_duration_s(cfg: GeometryConfig) -> float:
    """Time from the minimum-elevation rise to the pass peak."""
    beta = math.radians(central_angle_from_elevation(cfg, cfg.max_elevation_deg))
    psi_max = math.radians(central_angle_from_elevation(cfg, cfg.min_elevation_deg))
    return math.acos(math.cos(psi_max) / math.cos(beta)) / cfg.angular_rate_rad_s


def _elevation_at_offset(cfg: GeometryConfig, beta_rad: float, offset_s: float) -> float:
    # spherical right triangle: cross-track angle beta, along-track angle w*t
    cos_psi = math.cos(beta_rad) * math.cos(cfg.angular_rate_rad_s * offset_s)
    return _elevation_at(cfg, math.acos(min(1.0, cos_psi)))


def velocity_angle_at_offset(cfg: GeometryConfig, offset_s: float) -> float:
    """Angle between the satellite velocity and the satellite-to-UE direction.

    ``offset_s`` is time relative to the pass peak; negative while the
    satellite approaches, where the angle is below 90 deg.
    """
    beta = math.radians(central_angle_from_elevation(cfg, cfg.max_elevation_deg))
    wt = cfg.angular_rate_rad_s * offset_s
    rs = cfg.orbit_radius_km
    re = cfg.earth_radius_km
    sat = (rs * math.cos(wt), rs * math.sin(wt), 0.0)
    ue = (re * math.cos(beta), 0.0, re * math.sin(beta))
    los = tuple(u - s for u, s in zip(ue, sat))
    vel = (-math.sin(wt), math.cos(wt), 0.0)
    cos_phi = sum(a * b for a, b in zip(vel, los)) / math.hypot(*los)
    return math.degrees(math.acos(max(-1.0, min(1.0, cos_phi))))


def velocity_angle_deg(
    cfg: GeometryConfig, elevation_deg: float, ascending: bool = True
) -> float:
    """Velocity/line-of-sight angle at a given elevation of the configured pass."""
    _check_elevation(elevation_deg)
    if elevation_deg > cfg.max_elevation_deg:
        raise DomainError(
            f"elevation {elevation_deg} exceeds the pass peak {cfg.max_elevation_deg}"
        )
    beta = math.radians(central_angle_from_elevation(cfg, cfg.max_elevation_deg))
    psi = math.radians(central_angle_from_elevation(cfg, elevation_deg))
    ratio = min(1.0, math.cos(psi) / math.cos(beta))
    offset = math.acos(ratio) / cfg.angular_rate_rad_s
    return velocity_angle_at_offset(cfg, -offset if ascending else offset)


def build_pass_profile(
    cfg: GeometryConfig, shape: PassShape, sample_step_s: float
) -> PassProfile:
    """Sample a pass at a fixed time step.

    Samples are placed at whole multiples of ``sample_step_s`` away from the
    peak, plus the exact rise (and set) instants, so the first sample sits at
    the minimum elevation and the peak is always sampled.  The step adjacent
    to the rise/set endpoint is therefore the only one that may be shorter.
    """
    if not sample_step_s > 0:
        raise ConfigError("sample_step_s", "must be > 0")
    shape = PassShape(shape)
    half = pass_half_duration_s(cfg)
    beta = math.radians(central_angle_from_elevation(cfg, cfg.max_elevation_deg))

    offsets = []
    k = 0
    while k * sample_step_s < half:
        offsets.append(k * sample_step_s)
        k += 1
    # offsets from peak outward, excluding the endpoint
    rising = [-half] + [-o for o in reversed(offsets)]
    if shape is PassShape.FULL_PASS:
        all_offsets = rising + offsets[1:] + [half]
    else:
        all_offsets = rising

    lo, hi = cfg.min_elevation_deg, cfg.max_elevation_deg
    samples = []
    for off in all_offsets:
        if off == 0.0:
            el = hi
        elif abs(off) == half:
            el = lo
        else:
            el = min(max(_elevation_at_offset(cfg, beta, off), lo), hi)
        samples.append((off + half, el))
    return PassProfile(tuple(samples), shape, sample_step_s, peak_time_s=half)

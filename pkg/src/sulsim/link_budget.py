"""Per-carrier uplink link budget: path loss, gains, noise, Doppler, SNR and margin.

Every quantity is composed directly in dB; nothing round-trips through the
linear domain.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from sulsim.errors import ConfigError, DomainError
from sulsim.geometry import GeometryConfig, slant_range

SPEED_OF_LIGHT_M_S = 299_792_458.0
DEFAULT_VELOCITY_KMS = 7.5
THERMAL_NOISE_DBM_HZ = -174.0
REFERENCE_TEMP_K = 290.0


class CarrierName(str, enum.Enum):
    PUL = "PUL"
    SUL = "SUL"


class AtmosphericKind(str, enum.Enum):
    CONSTANT = "Constant"
    COSECANT_SCALED = "CosecantScaled"


@dataclass(frozen=True)
class CarrierConfig:
    """RF parameters of one uplink carrier.

    ``beamwidth_3db_deg`` may be left unset when the beam is centred on the
    UE; it is only needed for a non-zero off-boresight angle.
    """

    name: CarrierName
    frequency_mhz: float
    tx_power_dbm: float
    ue_gain_dbi: float
    sat_peak_gain_dbi: float
    atm_loss_ref_db: float
    impl_loss_db: float
    noise_temp_k: float
    bandwidth_hz: float
    beamwidth_3db_deg: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", CarrierName(self.name))
        for key in ("frequency_mhz", "bandwidth_hz", "noise_temp_k"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, "must be > 0")
        for key in ("atm_loss_ref_db", "impl_loss_db"):
            if not getattr(self, key) >= 0:
                raise ConfigError(key, "losses must be >= 0")
        if self.beamwidth_3db_deg is not None and not self.beamwidth_3db_deg > 0:
            raise ConfigError("beamwidth_3db_deg", "must be > 0 when set")


SUL_L_BAND = CarrierConfig(
    name=CarrierName.SUL,
    frequency_mhz=1600.0,
    tx_power_dbm=23.0,
    ue_gain_dbi=0.0,
    sat_peak_gain_dbi=45.0,
    atm_loss_ref_db=1.0,
    impl_loss_db=2.0,
    noise_temp_k=290.0,
    bandwidth_hz=10e6,
)

PUL_KA_BAND = CarrierConfig(
    name=CarrierName.PUL,
    frequency_mhz=30000.0,
    tx_power_dbm=23.0,
    ue_gain_dbi=0.0,
    sat_peak_gain_dbi=65.0,
    atm_loss_ref_db=15.0,
    impl_loss_db=2.0,
    noise_temp_k=500.0,
    bandwidth_hz=10e6,
)


@dataclass(frozen=True)
class AtmosphericModel:
    """Elevation dependence applied to a carrier's reference atmospheric loss.

    ``Constant`` uses the reference loss at every elevation.
    ``CosecantScaled`` scales a zenith loss by 1/sin(elevation), with the
    zenith loss chosen so the reference loss is met exactly at
    ``reference_elevation_deg``.
    """

    kind: AtmosphericKind = AtmosphericKind.COSECANT_SCALED
    reference_elevation_deg: float = 10.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AtmosphericKind(self.kind))
        if not 0 < self.reference_elevation_deg <= 90:
            raise ConfigError("reference_elevation_deg", "must lie in (0, 90]")


@dataclass(frozen=True)
class CarrierSample:
    """Link quantities of one carrier at one elevation."""

    snr_db: float
    margin_db: float
    received_power_dbm: float
    doppler_hz: float


@dataclass(frozen=True)
class MarginSample:
    elevation_deg: float
    slant_range_km: float
    velocity_angle_deg: float
    pul: CarrierSample
    sul: CarrierSample

    def carrier(self, name: CarrierName | str) -> CarrierSample:
        return self.pul if CarrierName(name) is CarrierName.PUL else self.sul


@dataclass(frozen=True)
class LinkTerms:
    """Every term of the received-power and SNR chain for one carrier."""

    carrier: CarrierName
    elevation_deg: float
    slant_range_km: float
    off_boresight_deg: float
    tx_power_dbm: float
    ue_gain_dbi: float
    sat_gain_dbi: float
    fspl_db: float
    atm_loss_db: float
    impl_loss_db: float
    received_power_dbm: float
    noise_psd_dbm_hz: float
    bandwidth_db_hz: float
    noise_floor_dbm: float
    snr_db: float


def check_carrier_pair(pul: CarrierConfig, sul: CarrierConfig) -> None:
    """The supplementary carrier must sit below the primary one."""
    if not sul.frequency_mhz < pul.frequency_mhz:
        raise ConfigError(
            "sul.frequency_mhz",
            f"SUL frequency ({sul.frequency_mhz} MHz) must be below PUL frequency "
            f"({pul.frequency_mhz} MHz): f_s < f_p",
        )


def fspl_db(frequency_mhz: float, distance_km: float) -> float:
    """Free-space path loss in dB for a frequency in MHz and distance in km."""
    if not frequency_mhz > 0:
        raise DomainError(f"frequency must be > 0 MHz, got {frequency_mhz!r}")
    if not distance_km > 0:
        raise DomainError(f"distance must be > 0 km, got {distance_km!r}")
    return 32.45 + 20.0 * math.log10(frequency_mhz) + 20.0 * math.log10(distance_km)


def atmospheric_loss_db(
    model: AtmosphericModel, carrier: CarrierConfig, elevation_deg: float
) -> float:
    if not 0.0 < elevation_deg <= 90.0:
        raise DomainError(
            f"atmospheric loss needs elevation in (0, 90] deg, got {elevation_deg!r}"
        )
    if model.kind is AtmosphericKind.CONSTANT:
        return carrier.atm_loss_ref_db
    if elevation_deg == model.reference_elevation_deg:
        return carrier.atm_loss_ref_db
    zenith = carrier.atm_loss_ref_db * math.sin(math.radians(model.reference_elevation_deg))
    return zenith / math.sin(math.radians(elevation_deg))


def sat_gain_db(carrier: CarrierConfig, off_boresight_deg: float) -> float:
    """Satellite antenna gain with a quadratic roll-off away from boresight."""
    if off_boresight_deg == 0:
        return carrier.sat_peak_gain_dbi
    if carrier.beamwidth_3db_deg is None:
        raise DomainError(
            f"{carrier.name.value}: off-boresight angle {off_boresight_deg} deg "
            "requires beamwidth_3db_deg"
        )
    return carrier.sat_peak_gain_dbi - 12.0 * (off_boresight_deg / carrier.beamwidth_3db_deg) ** 2


def doppler_shift_hz(
    frequency_mhz: float,
    velocity_kms: float = DEFAULT_VELOCITY_KMS,
    velocity_angle_deg: float = 0.0,
) -> float:
    """Signed Doppler shift; positive while the satellite approaches."""
    if velocity_kms < 0:
        raise DomainError(f"velocity must be >= 0, got {velocity_kms!r}")
    # snap exact quadrature so the peak of a pass reports zero shift
    if velocity_angle_deg % 180.0 == 90.0:
        return 0.0
    v_m_s = velocity_kms * 1e3
    return v_m_s / SPEED_OF_LIGHT_M_S * frequency_mhz * 1e6 * math.cos(
        math.radians(velocity_angle_deg)
    )


def noise_psd_dbm_hz(noise_temp_k: float) -> float:
    if not noise_temp_k > 0:
        raise DomainError(f"noise temperature must be > 0 K, got {noise_temp_k!r}")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(noise_temp_k / REFERENCE_TEMP_K)


def noise_floor_dbm(carrier: CarrierConfig) -> float:
    return noise_psd_dbm_hz(carrier.noise_temp_k) + 10.0 * math.log10(carrier.bandwidth_hz)


def link_terms(
    carrier: CarrierConfig,
    model: AtmosphericModel,
    elevation_deg: float,
    off_boresight_deg: float,
    geometry: GeometryConfig,
) -> LinkTerms:
    """Evaluate the full link chain and keep every intermediate term."""
    d = slant_range(geometry, elevation_deg)
    g_sat = sat_gain_db(carrier, off_boresight_deg)
    pl = fspl_db(carrier.frequency_mhz, d)
    atm = atmospheric_loss_db(model, carrier, elevation_deg)
    pr = (
        carrier.tx_power_dbm
        + carrier.ue_gain_dbi
        + g_sat
        - pl
        - atm
        - carrier.impl_loss_db
    )
    n0 = noise_psd_dbm_hz(carrier.noise_temp_k)
    bw = 10.0 * math.log10(carrier.bandwidth_hz)
    return LinkTerms(
        carrier=carrier.name,
        elevation_deg=elevation_deg,
        slant_range_km=d,
        off_boresight_deg=off_boresight_deg,
        tx_power_dbm=carrier.tx_power_dbm,
        ue_gain_dbi=carrier.ue_gain_dbi,
        sat_gain_dbi=g_sat,
        fspl_db=pl,
        atm_loss_db=atm,
        impl_loss_db=carrier.impl_loss_db,
        received_power_dbm=pr,
        noise_psd_dbm_hz=n0,
        bandwidth_db_hz=bw,
        noise_floor_dbm=n0 + bw,
        snr_db=pr - (n0 + bw),
    )


def received_power_dbm(
    carrier: CarrierConfig,
    model: AtmosphericModel,
    elevation_deg: float,
    off_boresight_deg: float,
    geometry: GeometryConfig,
) -> float:
    return link_terms(carrier, model, elevation_deg, off_boresight_deg, geometry).received_power_dbm


def predicted_snr_db(
    carrier: CarrierConfig,
    model: AtmosphericModel,
    elevation_deg: float,
    off_boresight_deg: float,
    geometry: GeometryConfig,
) -> float:
    """Predicted SNR, summed term by term rather than via received power."""
    d = slant_range(geometry, elevation_deg)
    return (
        carrier.tx_power_dbm
        + carrier.ue_gain_dbi
        + sat_gain_db(carrier, off_boresight_deg)
        - fspl_db(carrier.frequency_mhz, d)
        - atmospheric_loss_db(model, carrier, elevation_deg)
        - noise_psd_dbm_hz(carrier.noise_temp_k)
        - 10.0 * math.log10(carrier.bandwidth_hz)
        - carrier.impl_loss_db
    )


def predicted_margin_db(
    carrier: CarrierConfig,
    model: AtmosphericModel,
    elevation_deg: float,
    off_boresight_deg: float,
    geometry: GeometryConfig,
    snr_req_db: float,
) -> float:
    return predicted_snr_db(carrier, model, elevation_deg, off_boresight_deg, geometry) - snr_req_db


def carrier_sample(
    carrier: CarrierConfig,
    model: AtmosphericModel,
    elevation_deg: float,
    off_boresight_deg: float,
    geometry: GeometryConfig,
    snr_req_db: float,
    velocity_angle_deg: float,
    velocity_kms: float = DEFAULT_VELOCITY_KMS,
) -> CarrierSample:
    terms = link_terms(carrier, model, elevation_deg, off_boresight_deg, geometry)
    return CarrierSample(
        snr_db=terms.snr_db,
        margin_db=terms.snr_db - snr_req_db,
        received_power_dbm=terms.received_power_dbm,
        doppler_hz=doppler_shift_hz(carrier.frequency_mhz, velocity_kms, velocity_angle_deg),
    )

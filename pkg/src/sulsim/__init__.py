"""Elevation-aware supplementary uplink (SUL) simulator for LEO direct-to-device links."""

from sulsim.errors import ConfigError, DomainError
from sulsim.geometry import BeamMode, GeometryConfig, PassProfile, PassShape, slant_range
from sulsim.link_budget import AtmosphericModel, AtmosphericKind, CarrierConfig, MarginSample
from sulsim.controller import Carrier, ControllerConfig, ControllerState, Decision
from sulsim.passsim import Mode, PassResult, ScenarioConfig, run_pass

__version__ = "0.1.0"

__all__ = [
    "AtmosphericKind",
    "AtmosphericModel",
    "BeamMode",
    "Carrier",
    "CarrierConfig",
    "ConfigError",
    "ControllerConfig",
    "ControllerState",
    "Decision",
    "DomainError",
    "GeometryConfig",
    "MarginSample",
    "Mode",
    "PassProfile",
    "PassResult",
    "PassShape",
    "ScenarioConfig",
    "run_pass",
    "slant_range",
]

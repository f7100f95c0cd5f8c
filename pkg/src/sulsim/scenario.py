"""Reading and writing scenario files.

A scenario file is a JSON object mirroring :class:`ScenarioConfig`, with a
mandatory ``schema_version`` of 1.  Any key left out takes its default from
the reference Ka-band/L-band scenario; unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import os
from typing import Any

from sulsim.controller import ControllerConfig
from sulsim.errors import ConfigError
from sulsim.geometry import BeamMode, GeometryConfig, PassShape
from sulsim.link_budget import AtmosphericKind, AtmosphericModel, CarrierConfig, CarrierName
from sulsim.passsim import ScenarioConfig

SCHEMA_VERSION = 1

_SECTIONS = {
    "geometry": GeometryConfig,
    "pul": CarrierConfig,
    "sul": CarrierConfig,
    "atm_model": AtmosphericModel,
    "controller": ControllerConfig,
}
_SCALARS = ("beam_mode", "noise_sigma_db", "rng_seed", "pass_shape", "sample_step_s")
_NULLABLE = {("pul", "beamwidth_3db_deg"), ("sul", "beamwidth_3db_deg")}
_ENUMS: dict[str, type[enum.Enum]] = {
    "beam_mode": BeamMode,
    "pass_shape": PassShape,
    "name": CarrierName,
    "kind": AtmosphericKind,
}
_STRINGS = set(_ENUMS)


class ScenarioParseError(ValueError):
    """The scenario document is not well-formed."""


class ScenarioVersionError(ValueError):
    pass


def _plain(value: Any) -> Any:
    return value.value if isinstance(value, enum.Enum) else value


def scenario_to_dict(scenario: ScenarioConfig) -> dict[str, Any]:
    out: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    for section in _SECTIONS:
        obj = getattr(scenario, section)
        out[section] = {
            f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    for key in _SCALARS:
        out[key] = _plain(getattr(scenario, key))
    return out


def dump_scenario(scenario: ScenarioConfig, path: str | os.PathLike[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2)
        fh.write("\n")


def _check_value(path: str, key: str, value: Any, nullable: bool) -> None:
    if value is None:
        if nullable:
            return
        raise ConfigError(path, "must not be null")
    if key in _STRINGS:
        allowed = [m.value for m in _ENUMS[key]]
        if value not in allowed:
            raise ConfigError(path, f"must be one of {allowed}, got {value!r}")
        return
    if key == "rng_seed":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, "must be an integer")
        return
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, "must be a number")


def _build_section(name: str, cls: type, default: Any, raw: Any) -> Any:
    if not isinstance(raw, dict):
        raise ConfigError(name, "must be an object")
    names = [f.name for f in dataclasses.fields(cls)]
    unknown = sorted(set(raw) - set(names))
    if unknown:
        raise ConfigError(f"{name}.{unknown[0]}", "unknown key")
    kwargs = {k: getattr(default, k) for k in names}
    for key, value in raw.items():
        _check_value(f"{name}.{key}", key, value, (name, key) in _NULLABLE)
        kwargs[key] = float(value) if isinstance(value, int) and key not in _STRINGS else value
    try:
        return cls(**kwargs)
    except ConfigError as exc:
        raise exc.prefixed(name) from None


def scenario_from_dict(doc: Any) -> ScenarioConfig:
    """Validate a parsed scenario document and build the scenario.

    Raises
    ------
    ScenarioVersionError
        If ``schema_version`` is missing or not 1.
    ConfigError
        If any key is unknown or any value breaks an invariant; ``field``
        names the offending key.
    """
    if not isinstance(doc, dict):
        raise ScenarioParseError("scenario document must be a JSON object")
    version = doc.get("schema_version")
    if version is None:
        raise ScenarioVersionError("schema_version is required")
    if isinstance(version, bool) or version != SCHEMA_VERSION:
        raise ScenarioVersionError(
            f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION}"
        )
    unknown = sorted(set(doc) - set(_SECTIONS) - set(_SCALARS) - {"schema_version"})
    if unknown:
        raise ConfigError(unknown[0], "unknown key")

    default = ScenarioConfig()
    kwargs: dict[str, Any] = {}
    for name, cls in _SECTIONS.items():
        kwargs[name] = _build_section(name, cls, getattr(default, name), doc.get(name, {}))
    for key in _SCALARS:
        if key in doc:
            value = doc[key]
            _check_value(key, key, value, nullable=False)
            if key not in _STRINGS and key != "rng_seed":
                value = float(value)
            kwargs[key] = value
    return ScenarioConfig(**kwargs)


def load_scenario(path: str | os.PathLike[str]) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path}: malformed JSON: {exc}") from None
    return scenario_from_dict(doc)

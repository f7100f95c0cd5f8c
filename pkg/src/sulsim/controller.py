"""Elevation-aware SUL activation with safety margin and hysteresis.

The UE transmits on exactly one carrier.  While on the primary uplink (PUL)
it drops to the supplementary uplink (SUL) once the PUL margin falls under
the safety margin and the SUL link closes.  While on SUL it returns only
after the PUL margin clears the safety margin plus the hysteresis margin.

Note the asymmetry: the safety margin guards the PUL side only; the SUL
merely has to show a positive margin.  Both comparisons are strict, so a
margin sitting exactly on a threshold never triggers a switch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from sulsim.errors import ConfigError
from sulsim.link_budget import CarrierName as Carrier


class Decision(str, enum.Enum):
    STAY = "Stay"
    SWITCH_TO_PUL = "SwitchToPUL"
    SWITCH_TO_SUL = "SwitchToSUL"


@dataclass(frozen=True)
class ControllerConfig:
    safety_margin_db: float = 3.0
    hysteresis_margin_db: float = 3.0
    snr_req_db: float = 0.0

    def __post_init__(self) -> None:
        if not self.safety_margin_db >= 0:
            raise ConfigError("safety_margin_db", "must be >= 0")
        if not self.hysteresis_margin_db >= 0:
            raise ConfigError("hysteresis_margin_db", "must be >= 0")

    @property
    def switch_down_db(self) -> float:
        return self.safety_margin_db

    @property
    def switch_up_db(self) -> float:
        return self.safety_margin_db + self.hysteresis_margin_db


@dataclass(frozen=True)
class ControllerState:
    active_carrier: Carrier
    switch_count: int = 0
    last_decision: Decision = Decision.STAY


def initial_carrier(cfg: ControllerConfig, margin_pul_db: float, margin_sul_db: float) -> Carrier:
    """Pick the carrier to start a pass on.

    PUL is preferred when it already clears the safety margin; otherwise the
    UE camps on SUL, even when SUL does not close either (the pass simulator
    then marks those samples unavailable).
    """
    if margin_pul_db >= cfg.safety_margin_db:
        return Carrier.PUL
    return Carrier.SUL


def decide(
    active: Carrier, cfg: ControllerConfig, margin_pul_db: float, margin_sul_db: float
) -> Decision:
    if active is Carrier.PUL:
        if margin_pul_db < cfg.switch_down_db and margin_sul_db > 0:
            return Decision.SWITCH_TO_SUL
        return Decision.STAY
    if margin_pul_db > cfg.switch_up_db:
        return Decision.SWITCH_TO_PUL
    return Decision.STAY


def step(
    state: ControllerState,
    cfg: ControllerConfig,
    margin_pul_db: float,
    margin_sul_db: float,
) -> ControllerState:
    """Advance the controller by one set of predicted margins."""
    decision = decide(state.active_carrier, cfg, margin_pul_db, margin_sul_db)
    if decision is Decision.STAY:
        return ControllerState(state.active_carrier, state.switch_count, Decision.STAY)
    target = Carrier.PUL if decision is Decision.SWITCH_TO_PUL else Carrier.SUL
    return ControllerState(target, state.switch_count + 1, decision)

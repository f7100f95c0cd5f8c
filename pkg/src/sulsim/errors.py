"""Exception types shared across the simulator."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the domain of a physical formula."""


class ConfigError(ValueError):
    """A configuration value violates an invariant.

    ``field`` holds the dotted path of the offending field so callers can
    report exactly which key was wrong.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")

    def prefixed(self, prefix: str) -> ConfigError:
        return ConfigError(f"{prefix}.{self.field}", self.message)

from __future__ import annotations


class EvasionError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(EvasionError, ValueError):
    """An operation was evaluated outside its mathematical domain."""


class ConfigError(EvasionError, ValueError):
    """Invalid solver, oracle or raster configuration."""


class NoFeasiblePolicy(EvasionError, RuntimeError):
    """Every policy of an oracle sweep ended in capture."""


class VerificationFailed(EvasionError, RuntimeError):
    """Analytic and oracle values disagree beyond the tolerance."""

"""Exception types shared across the package and mapped to CLI exit codes."""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Raised when settings, seeds or vocabulary make a run impossible."""


class FingerprintMismatchError(ConfigurationError):
    """Raised when a matrix was built with a vocabulary other than the model's."""


class InvariantViolation(RuntimeError):
    """Raised when an internal consistency rule is broken."""

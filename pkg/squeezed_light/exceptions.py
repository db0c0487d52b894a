"""
Exception types raised by the squeezed_light package.

Precondition failures subclass ValueError so callers that only know the
standard library can still catch them.
"""


class SqueezedLightError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(SqueezedLightError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(SqueezedLightError, ValueError):
    """A computation was requested outside its numeric domain (e.g. Omega = 0)."""


class NumericRangeError(DomainError):
    """A result would overflow or underflow instead of being a finite number."""


class ConfigError(SqueezedLightError):
    """A run configuration or command-line usage problem."""

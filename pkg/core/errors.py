"""
core/errors.py – exception types shared by every simulator package.

Each class specialises the builtin it derives from, so callers may catch
either the specific type or the builtin one.
"""


class ConfigError(ValueError):
    """Invalid or unreadable simulator configuration."""


class ParameterError(ValueError):
    """An operation was called with an argument outside its domain."""


class DegenerateClusterError(RuntimeError):
    """A cluster ended up with no weight / no members."""


class UndefinedAverageError(ValueError):
    """Average energy requested for a cluster with no alive node."""

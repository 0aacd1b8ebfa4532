"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto process exit codes: schema/input problems exit 2,
configuration problems exit 3, numeric/domain problems exit 4.
"""


class WeldQCError(Exception):
    """Base class for all weldqc errors."""


class SchemaError(WeldQCError):
    """Input data does not match the expected table schema."""

    exit_code = 2


class ConfigError(WeldQCError):
    """A run configuration is inconsistent or references unknown entities."""

    exit_code = 3


class DomainError(WeldQCError):
    """A numeric argument is outside the mathematical domain of an operation."""

    exit_code = 4

"""Exceptions shared across the toolkit, with CLI exit codes."""


class RaagBnsError(Exception):
    exit_code = 1


class MalformedInput(RaagBnsError):
    """Unparseable or inconsistent input data (exit 2)."""

    exit_code = 2


class CapExceeded(RaagBnsError):
    """An enumeration grew past the configured cap (exit 3)."""

    exit_code = 3


class InvariantViolation(RaagBnsError):
    """An internal consistency check failed; indicates a bug (exit 4)."""

    exit_code = 4

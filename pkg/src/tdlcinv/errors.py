"""Shared exception hierarchy.

``ValidationError`` marks bad input data (a named structural invariant is
violated); the CLI maps it to exit code 2.  Everything else that escapes is
an internal failure (exit code 1).
"""


class ValidationError(Exception):
    """Input data violates a structural invariant."""

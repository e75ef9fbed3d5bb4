"""Shared exception types; the CLI maps them onto exit codes."""
from __future__ import annotations


class PreconditionError(ValueError):
    """An operation's stated precondition is violated (CLI exit code 2)."""

    def __init__(self, invariant: str, message: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}" if message else invariant)


class ImproperParametrization(PreconditionError):
    """The map has degree e > 1 onto its image."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(
            "properness_degree", f"parametrization has map degree {degree} > 1"
        )


class VerificationError(RuntimeError):
    """A cross-check that must hold failed (CLI exit code 3)."""

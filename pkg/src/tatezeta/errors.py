"""Exception types and the pole signal shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class InvalidArgument(ValueError):
    """Raised for malformed input: non-prime moduli, bad tables, bad literals."""


class OutOfDomain(ValueError):
    """Raised when an evaluator is asked for a point outside its domain."""


class NonConvergence(ArithmeticError):
    """Raised when a requested tolerance cannot be certified."""


class SingularPoint(ZeroDivisionError):
    """Raised when a ratio would divide by a vanishing local factor."""


@dataclass(frozen=True)
class Pole:
    """A simple pole at ``location`` with the given residue.

    Returned in place of a value by evaluators whose continuation has a
    pole at the requested point.
    """

    location: complex
    residue: complex

    def __bool__(self) -> bool:  # a pole is never a usable value
        return False

"""Exception types raised by wallcross.

Each type also derives from the builtin exception callers would expect, so
``except ValueError`` keeps working for input problems.
"""
from __future__ import annotations

from typing import Optional


class WallCrossError(Exception):
    """Base class for all wallcross errors."""


class InputError(WallCrossError, ValueError):
    """Malformed input or violated precondition."""


class ZeroWeightError(WallCrossError, ZeroDivisionError):
    """A zero factor reached the denominator of an Euler class."""


class MissingGammaError(WallCrossError, KeyError):
    """A γ_d value was requested that the series does not provide."""

    def __str__(self) -> str:
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class ParameterSearchError(WallCrossError, RuntimeError):
    """The stability parameter search gave up."""

    def __init__(self, message: str, predicate: Optional[str] = None) -> None:
        super().__init__(message)
        self.predicate = predicate


__all__ = [
    "WallCrossError",
    "InputError",
    "ZeroWeightError",
    "MissingGammaError",
    "ParameterSearchError",
]

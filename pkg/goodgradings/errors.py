"""Exception hierarchy shared by every goodgradings module."""

from __future__ import annotations


class GoodGradingError(Exception):
    """Base class for every error raised by goodgradings."""


class InputError(GoodGradingError, ValueError):
    """The caller supplied data the computation cannot accept (CLI exit code 1)."""


class ShapeError(InputError):
    """Vector or matrix operands have incompatible dimensions."""


class NoSolution(InputError):
    """A linear system is inconsistent."""


class Underdetermined(InputError):
    """A consistent linear system has more than one solution."""


class InvalidCartanType(InputError):
    """Unknown Cartan type or a rank the type does not admit."""


class InvalidSubset(InputError):
    """A node subset or node ordering does not fit the Dynkin diagram."""


class NonRegular(InputError):
    """A point lies on a hyperplane of the restricted arrangement."""


class InvalidPartition(InputError):
    """A partition violates the parity rule of its classical type."""


class OutsidePolytope(InputError):
    """A point lies outside the open good grading polytope."""


class DimensionNot2(InputError):
    """Drawing was requested for a polytope that is not two dimensional."""


class BudgetExceeded(GoodGradingError):
    """An enumeration ran past its configured step budget.

    ``partial`` is the number of states visited before giving up.
    """

    def __init__(self, message: str, partial: int) -> None:
        super().__init__(f"{message} (stopped after {partial} states)")
        self.partial = partial


class NonSplitting(GoodGradingError):
    """A characteristic polynomial does not split over the integers."""


class NegativeMultiplicity(GoodGradingError):
    """A weight character is not the character of an sl2-module."""


class TheoremViolation(GoodGradingError):
    """A computed invariant contradicts a known identity; always a bug."""

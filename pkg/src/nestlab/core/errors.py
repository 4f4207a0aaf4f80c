from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from nestlab.core.algebra.poly_fp import PolyFp

# ---------------------------------------------------------------------------
# Base
# ---------------------------------------------------------------------------


class NestLabError(Exception):
    """
    Base class for all errors raised by the nestlab kernel.

    Anything raised by the algebra, lattice, nest or concentration layers
    MUST derive from this type, except for programmer errors
    (TypeError, AssertionError, ...).
    """

    pass


# ---------------------------------------------------------------------------
# Invalid input (CLI maps these to exit code 2)
# ---------------------------------------------------------------------------


class InvalidInputError(NestLabError):
    """
    The caller supplied values that violate a construction invariant
    or an operation precondition.
    """

    pass


class DimensionMismatchError(InvalidInputError):
    """
    Operands live over different fields or have different sizes.
    """

    pass


class ScaleError(InvalidInputError):
    """
    Input exceeds the desk scale an exact or exhaustive routine supports.
    """

    pass


class ArgumentError(InvalidInputError):
    """
    Scalar argument out of range (k < 1, epsilon <= 0, index out of range).
    """

    pass


class StructureError(InvalidInputError):
    """
    Algebraic structure axioms fail.

    Examples:
    - a Cayley table that is not a group
    - a span that is not closed under multiplication
    - a chain member that is not a subgroup
    """

    pass


class OrderError(InvalidInputError):
    """
    A chain or sandwich precondition (a <= x <= b) is violated.
    """

    pass


class MembershipError(InvalidInputError):
    """
    An element lies outside the required ring or group (R_E, GL(R_E)).
    """

    pass


class PreconditionError(InvalidInputError):
    """
    The premise of a construction does not hold for the given data.
    """

    pass


class NotApplicableError(InvalidInputError):
    """
    The construction does not apply (e.g. constant term of the relation is zero).
    """

    pass


class RelationViolatedError(InvalidInputError):
    """
    A polynomial relation claimed to annihilate a matrix does not.
    """

    pass


class SingularMatrixError(InvalidInputError):
    """
    Inversion requested for a matrix of rank < n.
    """

    pass


class NotNilpotentError(InvalidInputError):
    """
    A nilpotent element or span was required.
    """

    pass


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class ConfigurationError(NestLabError):
    """
    Invalid, missing or unreadable experiment configuration.
    """

    pass


# ---------------------------------------------------------------------------
# Control-flow / expected outcomes (not bugs)
# ---------------------------------------------------------------------------


class NonSplitError(NestLabError):
    """
    The characteristic polynomial does not split into linear factors,
    so no invariant maximal flag exists.

    This is an expected outcome, not a failure. `factor` is the root-free
    cofactor left after dividing out all linear factors; it is irreducible
    whenever its degree is at most 3.
    """

    def __init__(self, factor: "PolyFp") -> None:
        self.factor = factor
        super().__init__(f"characteristic polynomial does not split: {factor}")

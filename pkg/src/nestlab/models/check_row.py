from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Union

Number = Union[Fraction, int, float]


@dataclass(frozen=True)
class CheckRow:
    """
    One verified inequality or identity.

    `lhs` is always exact (Fraction or int). `bound` is exact too, except
    for the exponential concentration bound which is a float; such rows
    compare with `slack`.
    """

    check: str
    lhs: Number
    relation: str  # "<=" | "==" | ">="
    bound: Number
    passed: bool
    context: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def leq(cls, check: str, lhs: Number, bound: Number, slack: Number = 0, **context) -> "CheckRow":
        return cls(check, lhs, "<=", bound, bool(lhs <= bound + slack), dict(context))

    @classmethod
    def eq(cls, check: str, lhs: Any, bound: Any, **context) -> "CheckRow":
        return cls(check, lhs, "==", bound, bool(lhs == bound), dict(context))

    @classmethod
    def holds(cls, check: str, ok: bool, **context) -> "CheckRow":
        """Boolean property rendered as 1 == 1 / 0 == 1."""
        return cls(check, int(bool(ok)), "==", 1, bool(ok), dict(context))

    def with_context(self, **context) -> "CheckRow":
        return replace(self, context={**self.context, **context})

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import ArgumentError, StructureError


def _strip(coeffs: Sequence[int], p: int) -> tuple[int, ...]:
    out = [int(c) % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyFp:
    """
    Polynomial over F_p, coefficients stored low degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        stripped = _strip(self.coeffs, self.field.p)
        object.__setattr__(self, "coeffs", stripped)

    # ---------- Construction ----------

    @classmethod
    def of(cls, p: int, coeffs: Sequence[int]) -> "PolyFp":
        return cls(FieldSpec(p), tuple(coeffs))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> "PolyFp":
        return cls(field, (c,))

    @classmethod
    def x(cls, field: FieldSpec) -> "PolyFp":
        return cls(field, (0, 1))

    @classmethod
    def linear(cls, field: FieldSpec, root: int) -> "PolyFp":
        """X - root."""
        return cls(field, (-root, 1))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Sequence[int]) -> "PolyFp":
        result = cls.constant(field, 1)
        for r in roots:
            result = result * cls.linear(field, r)
        return result

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "PolyFp":
        """
        Parse {"p": int, "coeffs": [c0, c1, ...]}.
        """
        try:
            return cls(FieldSpec(int(payload["p"])), tuple(int(c) for c in payload["coeffs"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed polynomial payload: {exc}") from exc

    def to_payload(self) -> dict[str, Any]:
        return {"p": self.field.p, "coeffs": list(self.coeffs)}

    # ---------- Properties ----------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    # ---------- Arithmetic ----------

    def _same(self, other: "PolyFp") -> None:
        self.field.require_same(other.field)

    def __add__(self, other: "PolyFp") -> "PolyFp":
        self._same(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyFp(self.field, tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        self._same(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyFp(self.field, tuple(self.coeff(i) - other.coeff(i) for i in range(size)))

    def __neg__(self) -> "PolyFp":
        return PolyFp(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        self._same(other)
        if self.is_zero() or other.is_zero():
            return PolyFp(self.field, ())
        p = self.field.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % p
        return PolyFp(self.field, tuple(out))

    def scale(self, c: int) -> "PolyFp":
        return PolyFp(self.field, tuple(c * a for a in self.coeffs))

    def __divmod__(self, other: "PolyFp") -> tuple["PolyFp", "PolyFp"]:
        self._same(other)
        if other.is_zero():
            raise ArgumentError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = self.field.inv(other.leading)
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] % p
            if c == 0:
                continue
            factor = (c * inv_lead) % p
            quot[k - d] = factor
            for i, b in enumerate(other.coeffs):
                rem[k - d + i] = (rem[k - d + i] - factor * b) % p
        return PolyFp(self.field, tuple(quot)), PolyFp(self.field, tuple(rem[:d] if d > 0 else ()))

    def __floordiv__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[1]

    # ---------- Evaluation ----------

    def evaluate(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def evaluate_matrix(self, a: MatrixFp) -> MatrixFp:
        """p^R(a), evaluated by Horner's rule."""
        self.field.require_same(a.field)
        acc = MatrixFp.zero(a.field, a.n)
        one = a.one()
        for c in reversed(self.coeffs):
            acc = acc @ a + one.scale(c)
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = "X" if i == 1 else f"X^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

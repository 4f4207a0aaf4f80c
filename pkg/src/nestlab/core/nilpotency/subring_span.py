from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import StructureError


@dataclass(frozen=True)
class SubringSpan:
    """
    A multiplicatively closed linear span of matrices.

    `unital` records that the identity belongs to the span; `ambient`,
    when set, marks the span as a two-sided ideal of that algebra.
    """

    span: MatrixSpan
    unital: bool = False
    ambient: Optional[MatrixSpan] = None

    def __post_init__(self) -> None:
        if not self.span.is_closed_under_products():
            raise StructureError("span is not closed under multiplication")
        if self.unital and not self.span.contains(MatrixFp.identity(self.field, self.n)):
            raise StructureError("span flagged unital does not contain the identity")
        if self.ambient is not None:
            if not self.ambient.contains_span(self.span):
                raise StructureError("ideal is not contained in its ambient algebra")
            left = self.ambient.products_with(self.span)
            right = self.span.products_with(self.ambient)
            if not (self.span.contains_span(left) and self.span.contains_span(right)):
                raise StructureError("span is not a two-sided ideal of its ambient algebra")

    @classmethod
    def of(
        cls,
        matrices: Iterable[MatrixFp],
        field: Optional[FieldSpec] = None,
        n: Optional[int] = None,
        unital: bool = False,
    ) -> "SubringSpan":
        return cls(MatrixSpan.of(matrices, field, n), unital=unital)

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "SubringSpan":
        """
        Parse {"p", "n", "basis": [[rows], ...], "unital": bool}.
        """
        try:
            field = FieldSpec(int(payload["p"]))
            n = int(payload["n"])
            mats = [MatrixFp.from_rows(field, rows) for rows in payload.get("basis", [])]
            unital = bool(payload.get("unital", False))
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed span payload: {exc}") from exc
        return cls.of(mats, field, n, unital=unital)

    def to_payload(self) -> dict[str, Any]:
        return {
            "p": self.field.p,
            "n": self.n,
            "basis": [b.entries.tolist() for b in self.basis],
            "unital": self.unital,
        }

    @property
    def field(self) -> FieldSpec:
        return self.span.field

    @property
    def n(self) -> int:
        return self.span.n

    @property
    def basis(self) -> list[MatrixFp]:
        return self.span.basis

    @property
    def dim(self) -> int:
        return self.span.dim

    def contains(self, a: MatrixFp) -> bool:
        return self.span.contains(a)

    def as_ideal_of(self, ambient: MatrixSpan) -> "SubringSpan":
        return SubringSpan(self.span, unital=self.unital, ambient=ambient)


def upper_triangular(field: FieldSpec, n: int, strict: bool = False) -> SubringSpan:
    """T_n(F_p), or its strictly upper triangular ideal."""
    offset = 1 if strict else 0
    mats = [
        MatrixFp.unit(field, n, i, j) for i in range(n) for j in range(i + offset, n)
    ]
    return SubringSpan.of(mats, field, n, unital=not strict)


def full_matrix_algebra(field: FieldSpec, n: int) -> SubringSpan:
    return SubringSpan(MatrixSpan.full(field, n), unital=True)

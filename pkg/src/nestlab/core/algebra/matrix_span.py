from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.linear import in_row_space, reduced_basis
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import DimensionMismatchError, ScaleError

# element enumeration of a span is capped at this many elements
MAX_SPAN_ELEMENTS = 1 << 16


@dataclass(frozen=True, eq=False)
class MatrixSpan:
    """
    Linear span of n x n matrices over F_p, held in canonical form.

    The basis is the RREF of the flattened spanning matrices; two spans
    are equal iff their canonical bases agree.
    """

    field: FieldSpec
    n: int
    rows: np.ndarray
    pivots: tuple[int, ...]

    def __post_init__(self) -> None:
        self.rows.setflags(write=False)

    # ---------- Construction ----------

    @classmethod
    def of(
        cls,
        matrices: Iterable[MatrixFp],
        field: Optional[FieldSpec] = None,
        n: Optional[int] = None,
    ) -> "MatrixSpan":
        mats = list(matrices)
        if mats:
            field = field or mats[0].field
            n = n or mats[0].n
            for m in mats:
                field.require_same(m.field)
                if m.n != n:
                    raise DimensionMismatchError(f"size mismatch: {m.n} vs {n}")
        if field is None or n is None:
            raise DimensionMismatchError("an empty span needs an explicit field and size")
        flat = [m.flat() for m in mats]
        rows, pivots = reduced_basis(flat, field.p, n * n)
        return cls(field, n, rows, tuple(pivots))

    @classmethod
    def from_vectors(cls, field: FieldSpec, n: int, vectors) -> "MatrixSpan":
        rows, pivots = reduced_basis(vectors, field.p, n * n)
        return cls(field, n, rows, tuple(pivots))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "MatrixSpan":
        return cls.of([], field, n)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "MatrixSpan":
        return cls.from_vectors(field, n, np.eye(n * n, dtype=np.int64))

    # ---------- Queries ----------

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> list[MatrixFp]:
        return [MatrixFp.from_flat(self.field, self.n, row) for row in self.rows]

    def contains(self, m: MatrixFp) -> bool:
        self.field.require_same(m.field)
        return in_row_space(m.flat(), self.rows, list(self.pivots), self.field.p)

    def contains_span(self, other: "MatrixSpan") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, m: MatrixFp) -> tuple[int, ...]:
        """
        Coordinates of `m` in the canonical basis (entries at pivot columns).
        """
        flat = m.flat()
        return tuple(int(flat[c]) for c in self.pivots)

    def combine(self, coords: Iterable[int]) -> MatrixFp:
        coords = np.array(list(coords), dtype=np.int64)
        if coords.size == 0:
            return MatrixFp.zero(self.field, self.n)
        return MatrixFp.from_flat(self.field, self.n, coords @ self.rows)

    def size(self) -> int:
        return self.field.p**self.dim

    def elements(self) -> Iterator[MatrixFp]:
        if self.size() > MAX_SPAN_ELEMENTS:
            raise ScaleError(f"span has {self.field.p}^{self.dim} elements")
        for coords in itertools.product(range(self.field.p), repeat=self.dim):
            yield self.combine(coords)

    def __add__(self, other: "MatrixSpan") -> "MatrixSpan":
        self.field.require_same(other.field)
        return MatrixSpan.from_vectors(
            self.field, self.n, np.vstack([self.rows, other.rows])
        )

    def products_with(self, other: "MatrixSpan") -> "MatrixSpan":
        """Span of all products x*y, x in self, y in other."""
        prods = [x @ y for x in self.basis for y in other.basis]
        return MatrixSpan.of(prods, self.field, self.n)

    def is_closed_under_products(self) -> bool:
        return self.contains_span(self.products_with(self))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixSpan):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.pivots == other.pivots
            and bool(np.array_equal(self.rows, other.rows))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, self.pivots, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixSpan(p={self.field.p}, n={self.n}, dim={self.dim})"


def canonical_span(matrices: Iterable[MatrixFp]) -> MatrixSpan:
    return MatrixSpan.of(matrices)

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.linear import in_row_space, reduce_against, reduced_basis
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import ArgumentError, DimensionMismatchError, StructureError


@dataclass(frozen=True, eq=False)
class Subspace:
    """
    Subspace of F_p^n, i.e. a principal right ideal aR of M_n(F_p)
    identified with the column space of a.

    `basis` holds the spanning vectors as rows in reduced row-echelon
    form; this is the canonical form, so equality is structural.
    """

    field: FieldSpec
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.basis.shape != (len(self.pivots), self.ambient_dim):
            raise StructureError("subspace basis is not in canonical form")
        self.basis.setflags(write=False)

    # ---------- Construction ----------

    @classmethod
    def span(cls, field: FieldSpec, n: int, vectors) -> "Subspace":
        if n < 1:
            raise ArgumentError(f"ambient dimension must be >= 1, got {n}")
        rows, pivots = reduced_basis(vectors, field.p, n)
        if rows.shape[1] != n:
            raise DimensionMismatchError(f"vectors of length {rows.shape[1]} in F^{n}")
        return cls(field, n, rows, tuple(pivots))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls.span(field, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls.span(field, n, np.eye(n, dtype=np.int64))

    @classmethod
    def standard(cls, field: FieldSpec, n: int, k: int) -> "Subspace":
        """span of the first k standard basis vectors."""
        return cls.span(field, n, np.eye(n, dtype=np.int64)[:k])

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "Subspace":
        """
        Parse {"p", "n", "basis": [[col], ...]}; the basis is normalized.
        """
        try:
            field = FieldSpec(int(payload["p"]))
            n = int(payload["n"])
            vectors = payload.get("basis", [])
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed subspace payload: {exc}") from exc
        return cls.span(field, n, np.array(vectors, dtype=np.int64).reshape(-1, n))

    def to_payload(self) -> dict[str, Any]:
        return {"p": self.field.p, "n": self.ambient_dim, "basis": self.basis.tolist()}

    # ---------- Queries ----------

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def delta(self) -> Fraction:
        """Normalized dimension dim/n."""
        return Fraction(self.dim, self.ambient_dim)

    def same_ambient(self, other: "Subspace") -> None:
        self.field.require_same(other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient mismatch: F^{self.ambient_dim} vs F^{other.ambient_dim}"
            )

    def contains_vector(self, v) -> bool:
        return in_row_space(v, self.basis, list(self.pivots), self.field.p)

    def reduce(self, v) -> np.ndarray:
        return reduce_against(v, self.basis, list(self.pivots), self.field.p)

    def __le__(self, other: "Subspace") -> bool:
        self.same_ambient(other)
        return all(other.contains_vector(v) for v in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def vectors(self) -> list[np.ndarray]:
        return [row.copy() for row in self.basis]

    def as_matrix(self) -> MatrixFp:
        """A matrix whose column space is this subspace."""
        n = self.ambient_dim
        arr = np.zeros((n, n), dtype=np.int64)
        arr[:, : self.dim] = self.basis.T
        return MatrixFp(self.field, n, arr)

    # ---------- Dunder ----------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(p={self.field.p}, n={self.ambient_dim}, basis={self.basis.tolist()})"


def sum_of(subspaces: Iterable[Subspace], field: FieldSpec, n: int) -> Subspace:
    blocks = [s.basis for s in subspaces]
    if not blocks:
        return Subspace.zero(field, n)
    return Subspace.span(field, n, np.vstack(blocks))

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from nestlab.core.algebra.char_poly import inverse
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rho
from nestlab.core.errors import OrderError, PreconditionError, StructureError
from nestlab.core.lattice.lattice_ops import column_space, join_meet, kernel
from nestlab.core.lattice.subspace import Subspace


@dataclass(frozen=True)
class Idempotent:
    """
    An element e of M_n(F_p) with e*e = e.

    Idempotents are ordered by e <= f iff ef = fe = e.
    """

    matrix: MatrixFp

    def __post_init__(self) -> None:
        if not self.matrix.is_idempotent():
            raise StructureError(f"not idempotent: {self.matrix!r}")

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Idempotent":
        return cls(MatrixFp.zero(field, n))

    @classmethod
    def one(cls, field: FieldSpec, n: int) -> "Idempotent":
        return cls(MatrixFp.identity(field, n))

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "Idempotent":
        return cls(MatrixFp.from_payload(payload))

    def to_payload(self) -> dict[str, Any]:
        return self.matrix.to_payload()

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def rho(self) -> Fraction:
        return rho(self.matrix)

    def image(self) -> Subspace:
        return column_space(self.matrix)

    def kernel(self) -> Subspace:
        return kernel(self.matrix)

    def complement(self) -> "Idempotent":
        """1 - e."""
        return Idempotent(self.matrix.complement())

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_one(self) -> bool:
        return self.matrix.is_identity()

    def __le__(self, other: "Idempotent") -> bool:
        e, f = self.matrix, other.matrix
        return e @ f == e and f @ e == e

    def __lt__(self, other: "Idempotent") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Idempotent") -> bool:
        return other <= self

    def __gt__(self, other: "Idempotent") -> bool:
        return other < self

    def is_orthogonal(self, other: "Idempotent") -> bool:
        return (self.matrix @ other.matrix).is_zero() and (other.matrix @ self.matrix).is_zero()

    def difference(self, lower: "Idempotent") -> "Idempotent":
        """
        self - lower for lower <= self; the result is an idempotent
        orthogonal to lower.
        """
        if not lower <= self:
            raise OrderError("difference needs lower <= self")
        return Idempotent(self.matrix - lower.matrix)

    def __repr__(self) -> str:
        return f"Idempotent({self.matrix.entries.tolist()})"


def projection(onto: Subspace, along: Subspace) -> Idempotent:
    """
    The idempotent with image `onto` and kernel `along`.

    Built as M D M^{-1}, where the columns of M are the bases of `onto`
    and `along` and D keeps the first dim(onto) coordinates.
    """
    onto.same_ambient(along)
    field, n = onto.field, onto.ambient_dim
    jm = join_meet(onto, along)
    if jm.meet.dim != 0 or jm.join.dim != n:
        raise PreconditionError("projection needs complementary subspaces")
    m = MatrixFp(field, n, np.vstack([onto.basis, along.basis]).T.copy())
    d = MatrixFp.diagonal(field, [1] * onto.dim + [0] * along.dim)
    return Idempotent(m @ d @ inverse(m))

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import DimensionMismatchError, OrderError, StructureError
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nests.idempotent import Idempotent


def _check_members(field: FieldSpec, n: int, items: Iterable[Any]) -> None:
    for item in items:
        item_field = item.field
        item_n = item.n if hasattr(item, "n") else item.ambient_dim
        field.require_same(item_field)
        if item_n != n:
            raise DimensionMismatchError(f"chain member of size {item_n} in a chain of size {n}")


@dataclass(frozen=True)
class Nest:
    """
    A finite chain of idempotents, stored strictly increasing.

    The endpoints 0 and 1 are optional members.
    """

    field: FieldSpec
    n: int
    elements: tuple[Idempotent, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        _check_members(self.field, self.n, self.elements)
        for lo, hi in zip(self.elements, self.elements[1:]):
            if not lo < hi:
                raise OrderError("nest members must be strictly increasing")

    @classmethod
    def of(cls, field: FieldSpec, n: int, matrices: Iterable[MatrixFp]) -> "Nest":
        return cls(field, n, tuple(Idempotent(m) for m in matrices))

    @classmethod
    def from_payload(cls, payload: Any) -> "Nest":
        """
        Parse a list of matrix objects, or {"p", "n", "elements": [...]}
        (the dict form also covers the empty nest).
        """
        if isinstance(payload, dict):
            try:
                field, n = FieldSpec(int(payload["p"])), int(payload["n"])
                items = payload.get("elements", [])
            except (KeyError, TypeError) as exc:
                raise StructureError(f"malformed nest payload: {exc}") from exc
        elif isinstance(payload, list) and payload:
            items = payload
            first = MatrixFp.from_payload(items[0])
            field, n = first.field, first.n
        else:
            raise StructureError("an empty nest must be given as {'p', 'n', 'elements': []}")
        return cls.of(field, n, (MatrixFp.from_payload(m) for m in items))

    def to_payload(self) -> dict[str, Any]:
        return {
            "p": self.field.p,
            "n": self.n,
            "elements": [e.to_payload() for e in self.elements],
        }

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e: Idempotent) -> bool:
        return e in self.elements

    def rho_values(self) -> list[Fraction]:
        return [e.rho for e in self.elements]

    def with_endpoints(self) -> tuple[Idempotent, ...]:
        """0, the members, 1 (endpoints not duplicated)."""
        zero = Idempotent.zero(self.field, self.n)
        one = Idempotent.one(self.field, self.n)
        inner = [e for e in self.elements if e != zero and e != one]
        return (zero, *inner, one)

    def element_of_rank(self, k: int) -> Idempotent:
        """The member (endpoints included) of rank k."""
        for e in self.with_endpoints():
            if e.rho == Fraction(k, self.n):
                return e
        raise OrderError(f"nest has no member of rank {k}")

    def is_chain_with(self, e: Idempotent) -> bool:
        return all(e <= f or f <= e for f in self.elements)


@dataclass(frozen=True)
class Flag:
    """A finite chain of subspaces, stored strictly increasing."""

    field: FieldSpec
    n: int
    subspaces: tuple[Subspace, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "subspaces", tuple(self.subspaces))
        _check_members(self.field, self.n, self.subspaces)
        for lo, hi in zip(self.subspaces, self.subspaces[1:]):
            if not lo < hi:
                raise OrderError("flag members must be strictly increasing")

    @classmethod
    def from_payload(cls, payload: Any) -> "Flag":
        if isinstance(payload, dict):
            try:
                field, n = FieldSpec(int(payload["p"])), int(payload["n"])
                items = payload.get("subspaces", [])
            except (KeyError, TypeError) as exc:
                raise StructureError(f"malformed flag payload: {exc}") from exc
            subs = tuple(Subspace.from_payload(s) for s in items)
        elif isinstance(payload, list) and payload:
            subs = tuple(Subspace.from_payload(s) for s in payload)
            field, n = subs[0].field, subs[0].ambient_dim
        else:
            raise StructureError("an empty flag must be given as {'p', 'n', 'subspaces': []}")
        return cls(field, n, subs)

    def to_payload(self) -> dict[str, Any]:
        return {
            "p": self.field.p,
            "n": self.n,
            "subspaces": [s.to_payload() for s in self.subspaces],
        }

    def __len__(self) -> int:
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def delta_values(self) -> list[Fraction]:
        return [s.delta for s in self.subspaces]


@dataclass(frozen=True)
class IntervalPartition:
    """
    (e_0, ..., e_k) with e_0 = 0, e_k = 1, e_{i-1} <= e_i, and every
    point drawn from the nest or the endpoints.

    The blocks e_i - e_{i-1} are pairwise orthogonal idempotents
    summing to 1.
    """

    nest: Nest
    points: tuple[Idempotent, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        field, n = self.nest.field, self.nest.n
        _check_members(field, n, pts)
        if len(pts) < 2 or not pts[0].is_zero() or not pts[-1].is_one():
            raise OrderError("interval partition must start at 0 and end at 1")
        allowed = set(self.nest.with_endpoints())
        for e in pts:
            if e not in allowed:
                raise OrderError("partition point outside the nest and its endpoints")
        for lo, hi in zip(pts, pts[1:]):
            if not lo <= hi:
                raise OrderError("partition points must be increasing")

    @classmethod
    def finest(cls, nest: Nest) -> "IntervalPartition":
        return cls(nest, nest.with_endpoints())

    @classmethod
    def trivial(cls, nest: Nest) -> "IntervalPartition":
        return cls(nest, (Idempotent.zero(nest.field, nest.n), Idempotent.one(nest.field, nest.n)))

    @classmethod
    def of(cls, nest: Nest, matrices: Sequence[MatrixFp]) -> "IntervalPartition":
        return cls(nest, tuple(Idempotent(m) for m in matrices))

    @property
    def field(self) -> FieldSpec:
        return self.nest.field

    @property
    def n(self) -> int:
        return self.nest.n

    @property
    def intervals(self) -> int:
        return len(self.points) - 1

    def blocks(self) -> list[Idempotent]:
        """The differences e_i - e_{i-1}."""
        return [hi.difference(lo) for lo, hi in zip(self.points, self.points[1:])]

    def refines(self, other: "IntervalPartition") -> bool:
        """Every point of `other` is a point of self."""
        mine = set(self.points)
        return all(e in mine for e in other.points)

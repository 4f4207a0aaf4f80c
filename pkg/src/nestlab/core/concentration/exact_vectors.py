"""
Exact rational vectors indexed by the elements of a finite set.

Values are kept as Python-int numerators over one positive common
denominator, in a numpy object array, so that sums, products and
comparisons stay exact and still vectorize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from nestlab.core.errors import ArgumentError, DimensionMismatchError, StructureError

Rational = Union[Fraction, int]


def to_fraction(value) -> Fraction:
    """Fraction from int, Fraction or a "p/q" string; floats are refused."""
    if isinstance(value, float):
        raise ArgumentError(f"inexact value {value!r}; pass a rational such as '1/2'")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ArgumentError(f"not a rational number: {value!r}") from exc


def _object_ints(values) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = [int(v) for v in values]
    return arr


@dataclass(frozen=True, eq=False)
class RationalVector:
    numerators: np.ndarray
    denominator: int

    def __post_init__(self) -> None:
        nums = np.asarray(self.numerators, dtype=object).reshape(-1)
        den = int(self.denominator)
        if den == 0:
            raise ArgumentError("zero denominator")
        if den < 0:
            nums, den = -nums, -den
        g = math.gcd(den, *(int(v) for v in nums))
        if g > 1:
            nums = np.array([int(v) // g for v in nums], dtype=object)
            den //= g
        nums = _object_ints(nums)
        nums.setflags(write=False)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", den)

    # ---------- Construction ----------

    @classmethod
    def of(cls, values: Iterable) -> "RationalVector":
        fracs = [to_fraction(v) for v in values]
        den = math.lcm(1, *(f.denominator for f in fracs))
        return cls(_object_ints([f.numerator * (den // f.denominator) for f in fracs]), den)

    @classmethod
    def from_ints(cls, numerators, denominator: int = 1) -> "RationalVector":
        return cls(_object_ints(np.asarray(numerators).reshape(-1).tolist()), denominator)

    @classmethod
    def zeros(cls, size: int) -> "RationalVector":
        return cls(_object_ints([0] * size), 1)

    @classmethod
    def constant(cls, size: int, value: Rational) -> "RationalVector":
        v = to_fraction(value)
        return cls(_object_ints([v.numerator] * size), v.denominator)

    # ---------- Access ----------

    def __len__(self) -> int:
        return len(self.numerators)

    @property
    def size(self) -> int:
        return len(self.numerators)

    def __getitem__(self, i: int) -> Fraction:
        return Fraction(int(self.numerators[i]), self.denominator)

    def take(self, indices) -> "RationalVector":
        return RationalVector(self.numerators[np.asarray(indices, dtype=np.int64)], self.denominator)

    def to_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(v), self.denominator) for v in self.numerators)

    def to_strings(self) -> list[str]:
        return [str(f) for f in self.to_fractions()]

    def as_int64(self) -> np.ndarray:
        """Numerators as int64; callers use it on small metric tables."""
        return self.numerators.astype(np.int64)

    # ---------- Arithmetic ----------

    def _require_size(self, other: "RationalVector") -> None:
        if self.size != other.size:
            raise DimensionMismatchError(f"vectors of length {self.size} and {other.size}")

    def _aligned(self, other: Union["RationalVector", Rational]) -> tuple[np.ndarray, np.ndarray, int]:
        if not isinstance(other, RationalVector):
            other = RationalVector.constant(self.size, other)
        self._require_size(other)
        den = math.lcm(self.denominator, other.denominator)
        return (
            self.numerators * (den // self.denominator),
            other.numerators * (den // other.denominator),
            den,
        )

    def __add__(self, other) -> "RationalVector":
        a, b, den = self._aligned(other)
        return RationalVector(a + b, den)

    def __sub__(self, other) -> "RationalVector":
        a, b, den = self._aligned(other)
        return RationalVector(a - b, den)

    def __neg__(self) -> "RationalVector":
        return RationalVector(-self.numerators, self.denominator)

    def __mul__(self, other) -> "RationalVector":
        """Entrywise product, or scaling by a rational."""
        if isinstance(other, RationalVector):
            self._require_size(other)
            return RationalVector(
                self.numerators * other.numerators, self.denominator * other.denominator
            )
        return self.scale(other)

    def scale(self, c: Rational) -> "RationalVector":
        c = to_fraction(c)
        return RationalVector(self.numerators * c.numerator, self.denominator * c.denominator)

    def __abs__(self) -> "RationalVector":
        return RationalVector(np.abs(self.numerators), self.denominator)

    def minimum(self, other) -> "RationalVector":
        a, b, den = self._aligned(other)
        return RationalVector(np.minimum(a, b), den)

    def maximum(self, other) -> "RationalVector":
        a, b, den = self._aligned(other)
        return RationalVector(np.maximum(a, b), den)

    def clip(self, lo: Rational, hi: Rational) -> "RationalVector":
        return self.maximum(lo).minimum(hi)

    # ---------- Reductions ----------

    def total(self) -> Fraction:
        return Fraction(int(self.numerators.sum()), self.denominator)

    def dot(self, other: "RationalVector") -> Fraction:
        self._require_size(other)
        return Fraction(
            int((self.numerators * other.numerators).sum()),
            self.denominator * other.denominator,
        )

    def max(self) -> Fraction:
        return Fraction(int(self.numerators.max()), self.denominator)

    def min(self) -> Fraction:
        return Fraction(int(self.numerators.min()), self.denominator)

    # ---------- Comparison ----------

    def ge(self, threshold: Rational) -> np.ndarray:
        """Boolean mask of entries >= threshold."""
        t = to_fraction(threshold)
        return np.asarray(self.numerators * t.denominator >= t.numerator * self.denominator, dtype=bool)

    def le(self, threshold: Rational) -> np.ndarray:
        t = to_fraction(threshold)
        return np.asarray(self.numerators * t.denominator <= t.numerator * self.denominator, dtype=bool)

    def all_le(self, other: Union["RationalVector", Rational]) -> bool:
        a, b, _ = self._aligned(other)
        return bool(np.all(np.asarray(a <= b, dtype=bool)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalVector):
            return NotImplemented
        return (
            self.size == other.size
            and self.denominator == other.denominator
            and bool(np.all(self.numerators == other.numerators))
        )

    def __hash__(self) -> int:
        return hash((self.denominator, tuple(int(v) for v in self.numerators)))

    def __repr__(self) -> str:
        preview = ", ".join(self.to_strings()[:6])
        more = ", ..." if self.size > 6 else ""
        return f"RationalVector([{preview}{more}])"


@dataclass(frozen=True)
class GroupFunction:
    """A real function on a finite set, exact."""

    values: RationalVector

    @classmethod
    def of(cls, values: Iterable) -> "GroupFunction":
        return cls(RationalVector.of(values))

    @classmethod
    def constant(cls, size: int, value: Rational) -> "GroupFunction":
        return cls(RationalVector.constant(size, value))

    @property
    def size(self) -> int:
        return self.values.size

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def sup_norm(self) -> Fraction:
        return abs(self.values).max()

    def diameter(self) -> Fraction:
        """max f - min f."""
        return self.values.max() - self.values.min()

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        return GroupFunction(self.values - other.values)

    def to_payload(self) -> list[str]:
        return self.values.to_strings()


@dataclass(frozen=True)
class MeanVector:
    """A probability vector on a finite set: nonnegative weights summing to 1."""

    weights: RationalVector

    def __post_init__(self) -> None:
        if not self.weights.ge(0).all():
            raise StructureError("mean has a negative weight")
        if self.weights.total() != 1:
            raise StructureError(f"mean weights sum to {self.weights.total()}, not 1")

    @classmethod
    def of(cls, weights: Iterable) -> "MeanVector":
        return cls(RationalVector.of(weights))

    @property
    def size(self) -> int:
        return self.weights.size

    def __getitem__(self, x: int) -> Fraction:
        return self.weights[x]

    def support(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.weights.numerators != 0, dtype=bool))

    def integrate(self, f: GroupFunction) -> Fraction:
        """mu(f) = sum_x mu(x) f(x)."""
        return self.weights.dot(f.values)

    def measure(self, mask: np.ndarray) -> Fraction:
        """mu of the set selected by a boolean mask."""
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (self.size,):
            raise DimensionMismatchError("mask does not match the mean")
        return Fraction(int(self.weights.numerators[mask].sum()), self.weights.denominator)

    def to_payload(self) -> list[str]:
        return self.weights.to_strings()

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

import numpy as np

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.errors import (
    ArgumentError,
    DimensionMismatchError,
    ScaleError,
    StructureError,
)

# exhaustive enumeration of M_n(F_p) is capped at this many matrices
MAX_ENUMERATION = 1 << 16


@dataclass(frozen=True, eq=False)
class MatrixFp:
    """
    Square n x n matrix over F_p.

    Entries are stored as a read-only int64 array of residues in [0, p).
    Products use `@`; `+`, `-` and unary `-` are entry-wise mod p.
    Equality and hashing are structural.
    """

    field: FieldSpec
    n: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ArgumentError(f"matrix side must be >= 1, got {self.n!r}")
        arr = self.entries
        if not isinstance(arr, np.ndarray) or arr.shape != (self.n, self.n):
            raise DimensionMismatchError(
                f"entries shape {getattr(arr, 'shape', None)} does not match n={self.n}"
            )
        if arr.dtype != np.int64:
            raise StructureError("entries must be int64 residues")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.p):
            raise StructureError(f"entries not reduced mod {self.field.p}")
        arr.setflags(write=False)

    # ---------- Construction ----------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "MatrixFp":
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError(f"matrix must be square, got shape {arr.shape}")
        return cls(field, int(arr.shape[0]), arr % field.p)

    @classmethod
    def of(cls, p: int, rows) -> "MatrixFp":
        return cls.from_rows(FieldSpec(p), rows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixFp":
        return cls(field, n, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "MatrixFp":
        return cls(field, n, np.zeros((n, n), dtype=np.int64))

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> "MatrixFp":
        """
        Matrix unit with a single 1 at row i, column j (0-based).
        """
        if not (0 <= i < n and 0 <= j < n):
            raise ArgumentError(f"matrix unit index ({i}, {j}) outside n={n}")
        arr = np.zeros((n, n), dtype=np.int64)
        arr[i, j] = 1
        return cls(field, n, arr)

    @classmethod
    def diagonal(cls, field: FieldSpec, values) -> "MatrixFp":
        values = [int(v) % field.p for v in values]
        return cls(field, len(values), np.diag(np.array(values, dtype=np.int64)))

    @classmethod
    def from_flat(cls, field: FieldSpec, n: int, flat) -> "MatrixFp":
        return cls(field, n, np.array(flat, dtype=np.int64).reshape(n, n) % field.p)

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "MatrixFp":
        """
        Parse {"p": int, "n": int, "entries": [[row], ...]}.
        """
        try:
            field = FieldSpec(int(payload["p"]))
            n = int(payload["n"])
            rows = payload["entries"]
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed matrix payload: {exc}") from exc
        m = cls.from_rows(field, rows)
        if m.n != n:
            raise DimensionMismatchError(f"declared n={n} but entries are {m.n}x{m.n}")
        return m

    def to_payload(self) -> dict[str, Any]:
        return {"p": self.field.p, "n": self.n, "entries": self.entries.tolist()}

    # ---------- Arithmetic ----------

    def _check(self, other: "MatrixFp") -> None:
        if not isinstance(other, MatrixFp):
            raise TypeError(f"expected MatrixFp, got {type(other).__name__}")
        self.field.require_same(other.field)
        if self.n != other.n:
            raise DimensionMismatchError(f"size mismatch: {self.n} vs {other.n}")

    def _wrap(self, arr: np.ndarray) -> "MatrixFp":
        return MatrixFp(self.field, self.n, arr % self.field.p)

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        self._check(other)
        return self._wrap(self.entries + other.entries)

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        self._check(other)
        return self._wrap(self.entries - other.entries)

    def __neg__(self) -> "MatrixFp":
        return self._wrap(-self.entries)

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        self._check(other)
        return self._wrap(self.entries @ other.entries)

    def scale(self, c: int) -> "MatrixFp":
        return self._wrap(self.entries * (int(c) % self.field.p))

    def power(self, k: int) -> "MatrixFp":
        if k < 0:
            raise ArgumentError("negative matrix powers are not supported")
        result = MatrixFp.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """
        Apply to column vectors given as rows of `vectors`; returns rows.
        """
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, self.n)
        return (v @ self.entries.T) % self.field.p

    def transpose(self) -> "MatrixFp":
        return MatrixFp(self.field, self.n, self.entries.T.copy())

    def one(self) -> "MatrixFp":
        return MatrixFp.identity(self.field, self.n)

    def complement(self) -> "MatrixFp":
        """1 - self."""
        return self.one() - self

    # ---------- Predicates ----------

    def is_zero(self) -> bool:
        return not self.entries.any()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.n, dtype=np.int64)))

    def is_idempotent(self) -> bool:
        return self @ self == self

    def flat(self) -> np.ndarray:
        return self.entries.reshape(-1)

    def key(self) -> bytes:
        return self.entries.tobytes()

    # ---------- Dunder ----------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFp):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, self.key()))

    def __repr__(self) -> str:
        return f"MatrixFp(p={self.field.p}, {self.entries.tolist()})"


def random_matrix(field: FieldSpec, n: int, rng: np.random.Generator) -> MatrixFp:
    return MatrixFp(field, n, rng.integers(0, field.p, size=(n, n), dtype=np.int64))


def enumerate_matrices(field: FieldSpec, n: int) -> Iterator[MatrixFp]:
    """
    Every matrix of M_n(F_p), in lexicographic order of the flattened entries.
    """
    if field.p ** (n * n) > MAX_ENUMERATION:
        raise ScaleError(f"M_{n}({field}) has more than {MAX_ENUMERATION} elements")
    for flat in itertools.product(range(field.p), repeat=n * n):
        yield MatrixFp.from_flat(field, n, flat)

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from nestlab.core.concentration.exact_vectors import RationalVector, to_fraction
from nestlab.core.errors import ScaleError, StructureError

MAX_SPACE_SIZE = 1024
EXHAUSTIVE_TRIANGLE_SIZE = 128


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """
    A finite pseudo-metric space with exact rational distances.

    `rows[x]` holds d(x, .) for every point x.
    """

    labels: tuple[str, ...]
    rows: tuple[RationalVector, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise StructureError("a metric space needs at least one point")
        if n > MAX_SPACE_SIZE:
            raise ScaleError(f"metric space of size {n} exceeds {MAX_SPACE_SIZE}")
        if len(self.rows) != n or any(r.size != n for r in self.rows):
            raise StructureError("distance matrix is not square over the labels")
        self._verify()

    def _verify(self) -> None:
        d = np.array([[self.rows[x][y] for y in range(self.size)] for x in range(self.size)], dtype=object)
        if any(d[x, x] != 0 for x in range(self.size)):
            raise StructureError("d(x, x) must vanish")
        if np.any(np.asarray(d < 0, dtype=bool)):
            raise StructureError("distances must be nonnegative")
        if np.any(np.asarray(d != d.T, dtype=bool)):
            raise StructureError("distance matrix is not symmetric")
        if self.size <= EXHAUSTIVE_TRIANGLE_SIZE:
            for y in range(self.size):
                through = d[:, y][:, None] + d[y, :][None, :]
                if np.any(np.asarray(d > through, dtype=bool)):
                    raise StructureError(f"triangle inequality fails through {self.labels[y]}")

    @classmethod
    def of(cls, labels: Sequence[str], matrix: Iterable[Iterable]) -> "FiniteMetricSpace":
        return cls(tuple(str(l) for l in labels), tuple(RationalVector.of(row) for row in matrix))

    @classmethod
    def discrete(cls, labels: Sequence[str], scale: Fraction = Fraction(1)) -> "FiniteMetricSpace":
        n = len(labels)
        return cls.of(labels, [[0 if x == y else scale for y in range(n)] for x in range(n)])

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FiniteMetricSpace":
        """{"labels": [...], "metric": [["0", "1/2"], ...]}."""
        try:
            labels = payload["labels"]
            metric = [[to_fraction(v) for v in row] for row in payload["metric"]]
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed metric space payload: {exc}") from exc
        return cls.of(labels, metric)

    def to_payload(self) -> dict[str, Any]:
        return {"labels": list(self.labels), "metric": [r.to_strings() for r in self.rows]}

    @property
    def size(self) -> int:
        return len(self.labels)

    def distance(self, x: int, y: int) -> Fraction:
        return self.rows[x][y]

    def distances_from(self, x: int) -> RationalVector:
        return self.rows[x]

    def distance_numerators(self, x: int) -> tuple[np.ndarray, int]:
        return self.rows[x].numerators, self.rows[x].denominator

    def diameter(self) -> Fraction:
        return max(r.max() for r in self.rows)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown point {label!r}") from None


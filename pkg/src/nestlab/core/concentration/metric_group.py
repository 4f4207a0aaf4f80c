"""
Finite groups carrying a right-invariant pseudo-metric.

Elements are the indices 0..order-1 with table[g, h] = g h, and the left
translation is lambda_g(x) = g x. A right-invariant pseudo-metric is
determined by its norm |g| = d(g, e) through d(x, y) = |x y^{-1}|, so
that is what the group stores. Direct products keep their factors and
multiply coordinatewise instead of tabulating.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, replace
from functools import cached_property
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from nestlab.core.concentration.exact_vectors import Rational, RationalVector, to_fraction
from nestlab.core.errors import ArgumentError, ScaleError, StructureError
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_TABLE_ORDER = 1024
MAX_GROUP_ORDER = 1 << 16
MAX_PAYLOAD_ORDER = 256


def _closure(mul, identity: int, order: int, generators: Sequence[int]) -> np.ndarray:
    """Mask of everything reachable from e by right multiplication."""
    reached = np.zeros(order, dtype=bool)
    reached[identity] = True
    gens = np.asarray(list(generators), dtype=np.int64)
    frontier = np.array([identity], dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(np.asarray(mul(frontier[:, None], gens[None, :])).reshape(-1))
        nxt = nxt[~reached[nxt]]
        reached[nxt] = True
        frontier = nxt
    return reached


def _generating_set(mul, identity: int, order: int) -> list[int]:
    gens: list[int] = []
    reached = _closure(mul, identity, order, gens)
    while not reached.all():
        gens.append(int(np.flatnonzero(~reached)[0]))
        reached = _closure(mul, identity, order, gens)
    return gens


def _verify_table(table: np.ndarray) -> tuple[int, np.ndarray]:
    """Group axioms for a Cayley table; returns (identity, inverse)."""
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise StructureError("Cayley table must be a nonempty square")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise StructureError("Cayley table entry out of range")
    arange = np.arange(n)
    sorted_rows = np.sort(table, axis=1)
    sorted_cols = np.sort(table, axis=0)
    if not (np.all(sorted_rows == arange[None, :]) and np.all(sorted_cols == arange[:, None])):
        raise StructureError("Cayley table is not a Latin square")
    candidates = [e for e in range(n) if np.all(table[e] == arange) and np.all(table[:, e] == arange)]
    if not candidates:
        raise StructureError("Cayley table has no identity")
    identity = candidates[0]
    inverse = np.argmax(table == identity, axis=1)
    if not np.all(table[inverse, arange] == identity):
        raise StructureError("left and right inverses differ")

    # associativity on a generating set suffices
    mul = lambda x, y: table[x, y]  # noqa: E731
    for s in _generating_set(mul, identity, n):
        if not np.array_equal(table[table[:, s], :], table[:, table[s, :]]):
            raise StructureError(f"multiplication is not associative at element {s}")
    return identity, inverse


@dataclass(frozen=True, eq=False)
class FiniteMetricGroup:
    labels: tuple[str, ...]
    identity: int
    inverse: np.ndarray
    norm: RationalVector
    table: Optional[np.ndarray] = None
    factors: tuple["FiniteMetricGroup", ...] = ()
    weights: tuple[Fraction, ...] = ()
    bi_invariant: bool = False
    name: str = "G"

    def __post_init__(self) -> None:
        if (self.table is None) == (not self.factors):
            raise StructureError("a metric group has either a table or factors")
        if self.norm.size != len(self.labels) or len(self.inverse) != len(self.labels):
            raise StructureError("labels, inverses and norm disagree on the order")

    # ---------- Construction ----------

    @classmethod
    def from_table(
        cls,
        table,
        norm,
        labels: Optional[Sequence[str]] = None,
        name: str = "G",
    ) -> "FiniteMetricGroup":
        table = np.array(table, dtype=np.int64)
        order = table.shape[0] if table.ndim else 0
        if order > MAX_TABLE_ORDER:
            raise ScaleError(f"tabulated group of order {order} exceeds {MAX_TABLE_ORDER}")
        identity, inverse = _verify_table(table)
        table.setflags(write=False)
        inverse.setflags(write=False)
        norm = norm if isinstance(norm, RationalVector) else RationalVector.of(norm)
        labels = tuple(str(l) for l in labels) if labels is not None else tuple(str(i) for i in range(order))
        if len(set(labels)) != len(labels):
            raise StructureError("group labels must be distinct")
        group = cls(labels, identity, inverse, norm, table=table, name=name)
        group._verify_norm()
        bi = group._detect_bi_invariance()
        logger.debug(f"{name}: order {order}, bi-invariant={bi}")
        return replace(group, bi_invariant=bi)

    @classmethod
    def from_metric_matrix(
        cls, table, metric, labels: Optional[Sequence[str]] = None, name: str = "G"
    ) -> "FiniteMetricGroup":
        """
        A group from its table and a full distance matrix, which must be
        right-invariant: d(x, y) = d(x y^{-1}, e) for all x, y.
        """
        table = np.asarray(table, dtype=np.int64)
        rows = [RationalVector.of(row) for row in metric]
        identity, inverse = _verify_table(table)
        n = table.shape[0]
        if len(rows) != n or any(r.size != n for r in rows):
            raise StructureError("distance matrix does not match the table")
        norm = RationalVector.of([rows[g][identity] for g in range(n)])
        for x in range(n):
            if rows[x] != norm.take(table[x, inverse]):
                raise StructureError(f"metric is not right-invariant at row {x}")
        return cls.from_table(table, norm, labels, name)

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FiniteMetricGroup":
        """
        {"labels", "table", "metric"} with the metric either a full matrix
        of rationals or, under "norm", the distances to the identity.
        """
        try:
            labels = payload.get("labels")
            name = str(payload.get("name", "G"))
            table = payload["table"]
            if "norm" in payload:
                return cls.from_table(table, [to_fraction(v) for v in payload["norm"]], labels, name)
            return cls.from_metric_matrix(table, payload["metric"], labels, name)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed group payload: {exc}") from exc

    def to_payload(self) -> dict[str, Any]:
        if self.order > MAX_PAYLOAD_ORDER:
            raise ScaleError(f"group of order {self.order} too large to serialize")
        els = self.elements
        table = self.mul(els[:, None], els[None, :])
        return {
            "name": self.name,
            "labels": list(self.labels),
            "table": np.asarray(table).tolist(),
            "metric": [self.distances_from(x).to_strings() for x in els],
        }

    @classmethod
    def direct_product(
        cls, factors: Sequence["FiniteMetricGroup"], weights: Sequence[Rational]
    ) -> "FiniteMetricGroup":
        """G_1 x ... x G_k with d(x, y) = sum_i w_i d_i(x_i, y_i)."""
        if not factors:
            raise ArgumentError("a product needs at least one factor")
        weights = tuple(to_fraction(w) for w in weights)
        if len(weights) != len(factors):
            raise ArgumentError("one weight per factor")
        if any(w <= 0 for w in weights):
            raise ArgumentError("product weights must be positive")
        shape = tuple(f.order for f in factors)
        order = int(np.prod(shape))
        if order > MAX_GROUP_ORDER:
            raise ScaleError(f"product of order {order} exceeds {MAX_GROUP_ORDER}")

        digits = np.unravel_index(np.arange(order), shape)
        inverse = np.ravel_multi_index(tuple(f.inverse[d] for f, d in zip(factors, digits)), shape)
        identity = int(np.ravel_multi_index(tuple(f.identity for f in factors), shape))
        norm = RationalVector.zeros(order)
        for f, w, d in zip(factors, weights, digits):
            norm = norm + f.norm.take(d).scale(w)
        labels = tuple(
            ",".join(f.labels[int(i)] for f, i in zip(factors, coords))
            for coords in zip(*digits)
        )
        inverse.setflags(write=False)
        name = " x ".join(f.name for f in factors)
        return cls(
            labels,
            identity,
            inverse,
            norm,
            factors=tuple(factors),
            weights=weights,
            bi_invariant=all(f.bi_invariant for f in factors),
            name=name,
        )

    def with_norm(self, norm: RationalVector, name: Optional[str] = None) -> "FiniteMetricGroup":
        if self.table is None:
            raise StructureError("product groups take their metric from the factors")
        return FiniteMetricGroup.from_table(self.table, norm, self.labels, name or self.name)

    def scaled(self, t: Rational) -> "FiniteMetricGroup":
        """The same group with metric t d."""
        t = to_fraction(t)
        if t <= 0:
            raise ArgumentError("metric scale must be positive")
        return replace(
            self,
            norm=self.norm.scale(t),
            weights=tuple(w * t for w in self.weights),
            name=f"{t}*{self.name}" if t != 1 else self.name,
        )

    # ---------- Checks ----------

    def _verify_norm(self) -> None:
        norm = self.norm
        if norm[self.identity] != 0:
            raise StructureError("d(e, e) must vanish")
        if not norm.ge(0).all():
            raise StructureError("distances must be nonnegative")
        if norm.take(self.inverse) != norm:
            raise StructureError("metric is not symmetric: |g^{-1}| differs from |g|")
        w = norm.as_int64()
        if np.any(w[self.table] > w[:, None] + w[None, :]):
            raise StructureError("triangle inequality fails")

    def _detect_bi_invariance(self) -> bool:
        """|h g h^{-1}| = |g| for all g, h."""
        w = self.norm.as_int64()
        conj = self.table[self.table, self.inverse[:, None]]
        return bool(np.all(w[conj] == w[None, :]))

    # ---------- Structure ----------

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return self.order

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)

    def mul(self, x, y):
        """Elementwise products x y with numpy broadcasting."""
        if self.table is not None:
            return self.table[x, y]
        dx = np.unravel_index(np.asarray(x, dtype=np.int64), self.shape)
        dy = np.unravel_index(np.asarray(y, dtype=np.int64), self.shape)
        parts = tuple(f.mul(a, b) for f, a, b in zip(self.factors, dx, dy))
        return np.ravel_multi_index(np.broadcast_arrays(*parts), self.shape)

    def coordinates(self, x) -> tuple:
        return np.unravel_index(np.asarray(x, dtype=np.int64), self.shape)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise StructureError(f"unknown element {label!r} of {self.name}") from None

    def distance(self, x: int, y: int) -> Fraction:
        return self.norm[int(self.mul(x, self.inverse[y]))]

    def distances_from(self, x: int) -> RationalVector:
        """d(x, y) for every y."""
        return self.norm.take(self.mul(x, self.inverse))

    @cached_property
    def norm_numerators(self) -> np.ndarray:
        """|g| times the norm denominator, int64."""
        return self.norm.as_int64()

    def distance_numerators(self, x: int) -> tuple[np.ndarray, int]:
        return self.norm_numerators[self.mul(x, self.inverse)], self.norm.denominator

    def diameter(self) -> Fraction:
        return self.norm.max()

    def closure(self, generators: Sequence[int]) -> np.ndarray:
        """The subgroup generated by `generators`, as sorted indices."""
        return np.flatnonzero(_closure(self.mul, self.identity, self.order, generators))

    def is_subgroup(self, members) -> bool:
        members = np.unique(np.asarray(members, dtype=np.int64))
        inside = np.zeros(self.order, dtype=bool)
        inside[members] = True
        if not inside[self.identity]:
            return False
        gens: list[int] = []
        reached = np.zeros(self.order, dtype=bool)
        reached[self.identity] = True
        while not np.array_equal(reached, inside):
            if np.any(reached & ~inside):
                return False
            gens.append(int(np.flatnonzero(inside & ~reached)[0]))
            reached = _closure(self.mul, self.identity, self.order, gens)
        return True

    def __repr__(self) -> str:
        return f"FiniteMetricGroup({self.name}, order={self.order}, bi_invariant={self.bi_invariant})"


# ---------- Catalog ----------


def cyclic_group(n: int, metric: str = "word") -> FiniteMetricGroup:
    """Z_n with the word metric min(k, n - k) or the discrete metric."""
    if n < 1:
        raise ArgumentError("cyclic group order must be positive")
    k = np.arange(n)
    table = (k[:, None] + k[None, :]) % n
    if metric == "word":
        norm = np.minimum(k, n - k)
    elif metric == "discrete":
        norm = (k != 0).astype(np.int64)
    else:
        raise ArgumentError(f"unknown metric {metric!r} for a cyclic group")
    return FiniteMetricGroup.from_table(table, RationalVector.from_ints(norm), name=f"Z{n}")


def symmetric_group(k: int = 3, metric: str = "discrete") -> FiniteMetricGroup:
    """
    S_k on one-line permutations, (g h)(i) = g(h(i)). `metric` is
    "discrete" or "transpositions" (k minus the number of cycles).
    """
    if not 1 <= k <= 5:
        raise ArgumentError("symmetric groups are tabulated for 1 <= k <= 5")
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.array(
        [[index[tuple(g[h[i]] for i in range(k))] for h in perms] for g in perms],
        dtype=np.int64,
    )

    def cycles(p: tuple[int, ...]) -> int:
        seen, count = set(), 0
        for start in range(k):
            if start not in seen:
                count += 1
                i = start
                while i not in seen:
                    seen.add(i)
                    i = p[i]
        return count

    if metric == "discrete":
        norm = [0 if p == tuple(range(k)) else 1 for p in perms]
    elif metric == "transpositions":
        norm = [k - cycles(p) for p in perms]
    else:
        raise ArgumentError(f"unknown metric {metric!r} for a symmetric group")
    labels = ["".join(str(v) for v in p) for p in perms]
    return FiniteMetricGroup.from_table(table, RationalVector.from_ints(norm), labels, name=f"S{k}")


def discrete_metric(group: FiniteMetricGroup) -> FiniteMetricGroup:
    norm = np.ones(group.order, dtype=np.int64)
    norm[group.identity] = 0
    return group.with_norm(RationalVector.from_ints(norm), name=group.name)


def seeded_word_metric(
    group: FiniteMetricGroup, rng: np.random.Generator, max_weight: int = 4
) -> FiniteMetricGroup:
    """
    Weighted word metric |g| = least total weight of a word s_1...s_m = g
    over a seeded symmetric generating set, each pair {s, s^{-1}} carrying
    one integer weight in [1, max_weight]. Right-invariant by construction;
    bi-invariant only by accident.
    """
    if max_weight < 1:
        raise ArgumentError("max_weight must be >= 1")
    pairs = sorted({tuple(sorted((g, int(group.inverse[g])))) for g in range(group.order) if g != group.identity})
    order = rng.permutation(len(pairs))
    keep = rng.random(len(pairs)) < 0.5
    chosen = [pairs[i] for i in order if keep[i]]
    for i in order:
        flat = [s for pair in chosen for s in pair]
        if _closure(group.mul, group.identity, group.order, flat).all():
            break
        if pairs[i] not in chosen:
            chosen.append(pairs[i])
    weights = {}
    for pair in chosen:
        w = int(rng.integers(1, max_weight + 1))
        for s in pair:
            weights[s] = w

    dist = {group.identity: 0}
    heap = [(0, group.identity)]
    done = set()
    while heap:
        d, g = heapq.heappop(heap)
        if g in done:
            continue
        done.add(g)
        for s, w in weights.items():
            h = int(group.mul(g, s))
            if d + w < dist.get(h, d + w + 1):
                dist[h] = d + w
                heapq.heappush(heap, (d + w, h))
    norm = RationalVector.from_ints([dist[g] for g in range(group.order)])
    return group.with_norm(norm, name=f"{group.name}[word]")

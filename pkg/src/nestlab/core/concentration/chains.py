"""
Subgroup chains and their amenable length.

For H <= K <= G, a base g and a right-invariant d, the quotient K/H is
measured with d^g(xH, yH) = min_{h in H} d(g x, g y h). The length of a
chain {e} = G_0 <= ... <= G_n = G is the root sum of squares of the worst
quotient diameter (over bases g) at each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from nestlab.core.concentration.exact_vectors import Rational, to_fraction
from nestlab.core.concentration.metric_group import FiniteMetricGroup
from nestlab.core.errors import StructureError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow

logger = LoggerManager.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SubgroupChain:
    group: FiniteMetricGroup
    members: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        members = tuple(np.unique(np.asarray(m, dtype=np.int64)) for m in self.members)
        object.__setattr__(self, "members", members)
        g = self.group
        if not members:
            raise StructureError("a chain needs at least one subgroup")
        if not np.array_equal(members[0], [g.identity]):
            raise StructureError("a chain starts at the trivial subgroup")
        if len(members[-1]) != g.order:
            raise StructureError("a chain ends at the whole group")
        for lo, hi in zip(members, members[1:]):
            if not np.all(np.isin(lo, hi)):
                raise StructureError("chain members must increase")
        for m in members[1:-1]:
            if not g.is_subgroup(m):
                raise StructureError("chain member is not a subgroup")

    @classmethod
    def of(cls, group: FiniteMetricGroup, members: Sequence) -> "SubgroupChain":
        return cls(group, tuple(np.asarray(m, dtype=np.int64) for m in members))

    @classmethod
    def trivial(cls, group: FiniteMetricGroup) -> "SubgroupChain":
        """({e}, G)."""
        return cls.of(group, [[group.identity], group.elements])

    @classmethod
    def from_labels(cls, group: FiniteMetricGroup, members: Sequence[Sequence[str]]) -> "SubgroupChain":
        return cls.of(group, [[group.index(label) for label in m] for m in members])

    @classmethod
    def generated(cls, group: FiniteMetricGroup, generators: Sequence[Sequence[int]]) -> "SubgroupChain":
        """G_i generated by the first i generator batches."""
        members = [[group.identity]]
        acc: list[int] = []
        for batch in generators:
            acc.extend(int(g) for g in batch)
            members.append(group.closure(acc))
        return cls.of(group, members)

    def to_payload(self) -> list[list[str]]:
        return [[self.group.labels[i] for i in m] for m in self.members]

    @property
    def steps(self) -> int:
        return len(self.members) - 1

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    def describe(self) -> str:
        return "<".join(str(s) for s in self.sizes())


def coset_representatives(g: FiniteMetricGroup, h_sub: np.ndarray, k_sub: np.ndarray) -> np.ndarray:
    """One representative per left coset x H inside K, least index first."""
    covered = np.zeros(g.order, dtype=bool)
    reps = []
    for x in np.sort(k_sub):
        if not covered[x]:
            reps.append(int(x))
            covered[g.mul(x, h_sub)] = True
    return np.asarray(reps, dtype=np.int64)


def _quotient_diameter_numerator(
    g: FiniteMetricGroup, h_sub: np.ndarray, reps: np.ndarray, base: int, w: np.ndarray
) -> int:
    bx = np.asarray(g.mul(base, reps))
    inv_targets = g.inverse[g.mul(bx[:, None], h_sub[None, :])]
    best = 0
    for s in range(len(reps)):
        d = w[g.mul(bx[s], inv_targets)]
        best = max(best, int(d.min(axis=1).max()))
    return best


def _check_pair(g: FiniteMetricGroup, h_sub: np.ndarray, k_sub: np.ndarray) -> None:
    if not (g.is_subgroup(h_sub) and g.is_subgroup(k_sub)):
        raise StructureError("quotient diameter needs subgroups")
    if not np.all(np.isin(h_sub, k_sub)):
        raise StructureError("quotient diameter needs H <= K")


def coset_quotient_diameter(
    g: FiniteMetricGroup, h_sub: Sequence[int], k_sub: Sequence[int], base: int
) -> Fraction:
    """diam(K/H, d^base) = max over coset pairs of min over H-translates."""
    h_sub = np.unique(np.asarray(h_sub, dtype=np.int64))
    k_sub = np.unique(np.asarray(k_sub, dtype=np.int64))
    _check_pair(g, h_sub, k_sub)
    reps = coset_representatives(g, h_sub, k_sub)
    num = _quotient_diameter_numerator(g, h_sub, reps, int(base), g.norm_numerators)
    return Fraction(num, g.norm.denominator)


def sup_quotient_diameter(g: FiniteMetricGroup, h_sub: np.ndarray, k_sub: np.ndarray) -> Fraction:
    """sup over bases; the identity alone when d is bi-invariant."""
    reps = coset_representatives(g, h_sub, k_sub)
    if len(reps) == 1:
        return Fraction(0)
    w = g.norm_numerators
    bases = [g.identity] if g.bi_invariant else range(g.order)
    num = max(_quotient_diameter_numerator(g, h_sub, reps, b, w) for b in bases)
    return Fraction(num, g.norm.denominator)


@dataclass(frozen=True)
class ChainLength:
    """
    `radicand` is the exact sum of squared step diameters; `value` its
    float root with lower**2 <= radicand <= upper**2.
    """

    step_diameters: tuple[Fraction, ...]
    radicand: Fraction
    value: float
    lower: float
    upper: float


def _root_bounds(r: Fraction) -> tuple[float, float, float]:
    value = math.sqrt(r.numerator / r.denominator)
    lower, upper = value, value
    while Fraction(lower) ** 2 > r:
        lower = math.nextafter(lower, 0.0)
    while Fraction(upper) ** 2 < r:
        upper = math.nextafter(upper, math.inf)
    return value, lower, upper


def chain_length(g: FiniteMetricGroup, chain: SubgroupChain) -> ChainLength:
    if chain.group.order != g.order:
        raise StructureError("chain belongs to another group")
    diameters = tuple(
        sup_quotient_diameter(g, lo, hi) for lo, hi in zip(chain.members, chain.members[1:])
    )
    radicand = sum((d * d for d in diameters), Fraction(0))
    value, lower, upper = _root_bounds(radicand)
    logger.debug(f"{g.name} chain {chain.describe()}: radicand {radicand}")
    return ChainLength(diameters, radicand, value, lower, upper)


def homogeneity_check(g: FiniteMetricGroup, chain: SubgroupChain, t: Rational) -> CheckRow:
    """Length under t d equals t times the length under d, compared squared."""
    t = to_fraction(t)
    scaled = g.scaled(t)
    base = chain_length(g, chain).radicand
    rescaled = chain_length(scaled, SubgroupChain(scaled, chain.members)).radicand
    return CheckRow.eq("length_homogeneity", rescaled, t * t * base, t=str(t))


def chain_from_payload(group: FiniteMetricGroup, payload: Any) -> SubgroupChain:
    """A list of label lists, or {"generators": [[labels], ...]} for generated chains."""
    if isinstance(payload, dict) and "generators" in payload:
        batches = [[group.index(label) for label in batch] for batch in payload["generators"]]
        return SubgroupChain.generated(group, batches)
    if not isinstance(payload, list):
        raise StructureError("chain payload must be a list of label lists")
    return SubgroupChain.from_labels(group, payload)

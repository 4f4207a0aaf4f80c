"""
Means on a finite group and their convolution.

(Phi_mu f)(x) = sum_h mu(h) f(x h) = mu(f o lambda_x), and mu nu is the
mean f -> mu(Phi_nu f), i.e. the pushforward of mu (x) nu under
multiplication: (mu nu)(z) = sum_{x h = z} mu(x) nu(h).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from nestlab.core.concentration.exact_vectors import GroupFunction, MeanVector, RationalVector
from nestlab.core.concentration.metric_group import FiniteMetricGroup
from nestlab.core.errors import DimensionMismatchError, StructureError
from nestlab.models.check_row import CheckRow


def _require(g: FiniteMetricGroup, *sized) -> None:
    for obj in sized:
        if obj.size != g.order:
            raise DimensionMismatchError(f"vector of length {obj.size} on a group of order {g.order}")


def haar_mean(g: FiniteMetricGroup) -> MeanVector:
    return MeanVector(RationalVector.constant(g.order, Fraction(1, g.order)))


def point_mass(g: FiniteMetricGroup, x: int) -> MeanVector:
    nums = np.zeros(g.order, dtype=np.int64)
    nums[x] = 1
    return MeanVector(RationalVector.from_ints(nums))


def subgroup_haar(g: FiniteMetricGroup, members: Sequence[int]) -> MeanVector:
    members = np.unique(np.asarray(members, dtype=np.int64))
    if not g.is_subgroup(members):
        raise StructureError("Haar mean needs a subgroup")
    nums = np.zeros(g.order, dtype=np.int64)
    nums[members] = 1
    return MeanVector(RationalVector.from_ints(nums, len(members)))


def random_mean(
    g: FiniteMetricGroup,
    rng: np.random.Generator,
    support: Optional[Sequence[int]] = None,
    max_weight: int = 9,
) -> MeanVector:
    """Seeded integer weights in [0, max_weight] on `support`, normalized."""
    support = g.elements if support is None else np.asarray(support, dtype=np.int64)
    nums = np.zeros(g.order, dtype=np.int64)
    nums[support] = rng.integers(0, max_weight + 1, size=len(support))
    if nums.sum() == 0:
        nums[support[0]] = 1
    return MeanVector(RationalVector.from_ints(nums, int(nums.sum())))


def mean_convolution(mu: MeanVector, nu: MeanVector, g: FiniteMetricGroup) -> MeanVector:
    _require(g, mu, nu)
    acc = np.zeros(g.order, dtype=object)
    acc[:] = 0
    for x in mu.support():
        # z = x h runs over the whole group exactly once
        acc[g.mul(x, g.elements)] += mu.weights.numerators[x] * nu.weights.numerators
    return MeanVector(RationalVector(acc, mu.weights.denominator * nu.weights.denominator))


def convolve_function(mu: MeanVector, f: GroupFunction, g: FiniteMetricGroup) -> GroupFunction:
    """Phi_mu f."""
    _require(g, mu, f)
    acc = np.zeros(g.order, dtype=object)
    acc[:] = 0
    for h in mu.support():
        acc = acc + mu.weights.numerators[h] * f.values.numerators[g.mul(g.elements, h)]
    return GroupFunction(RationalVector(acc, mu.weights.denominator * f.values.denominator))


def is_right_invariant(f: GroupFunction, g: FiniteMetricGroup, members: Sequence[int]) -> bool:
    """f(x h) = f(x) for every x and every h in the subgroup."""
    return all(f.values.take(g.mul(g.elements, h)) == f.values for h in members)


# ---------- Laws ----------


def point_mass_check(g: FiniteMetricGroup, x: int, y: int) -> CheckRow:
    product = mean_convolution(point_mass(g, x), point_mass(g, y), g)
    return CheckRow.holds(
        "point_mass_product",
        product == point_mass(g, int(g.mul(x, y))),
        x=g.labels[x],
        y=g.labels[y],
    )


def haar_absorbs_check(g: FiniteMetricGroup, nu: MeanVector) -> CheckRow:
    """nu * Haar = Haar."""
    haar = haar_mean(g)
    return CheckRow.holds("haar_absorbs", mean_convolution(nu, haar, g) == haar)


def haar_flattens_check(g: FiniteMetricGroup, f: GroupFunction) -> CheckRow:
    """Phi_Haar f is the constant Haar(f)."""
    haar = haar_mean(g)
    expected = GroupFunction.constant(g.order, haar.integrate(f))
    return CheckRow.holds("haar_flattens", convolve_function(haar, f, g) == expected)


def duality_check(mu: MeanVector, nu: MeanVector, f: GroupFunction, g: FiniteMetricGroup) -> CheckRow:
    """(mu nu)(f) = mu(Phi_nu f)."""
    lhs = mean_convolution(mu, nu, g).integrate(f)
    return CheckRow.eq("convolution_duality", lhs, mu.integrate(convolve_function(nu, f, g)))


def associativity_check(
    mu: MeanVector, nu: MeanVector, kappa: MeanVector, g: FiniteMetricGroup
) -> CheckRow:
    left = mean_convolution(mean_convolution(mu, nu, g), kappa, g)
    right = mean_convolution(mu, mean_convolution(nu, kappa, g), g)
    return CheckRow.holds("convolution_associative", left == right)


def contraction_check(mu: MeanVector, f: GroupFunction, g: FiniteMetricGroup) -> CheckRow:
    """sup |Phi_mu f| <= sup |f|."""
    return CheckRow.leq("convolution_contraction", convolve_function(mu, f, g).sup_norm(), f.sup_norm())

"""
Direct products with weighted sum metrics and their coordinate chains.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from nestlab.core.concentration.chains import ChainLength, SubgroupChain, chain_length
from nestlab.core.concentration.exact_vectors import GroupFunction, Rational, RationalVector, to_fraction
from nestlab.core.concentration.lipschitz import is_lipschitz
from nestlab.core.concentration.metric_group import FiniteMetricGroup, cyclic_group
from nestlab.core.errors import ArgumentError, DimensionMismatchError
from nestlab.models.check_row import CheckRow

MAX_CHECKED_POINTS = 256


def coordinate_chain(g: FiniteMetricGroup) -> SubgroupChain:
    """H_i = G_1 x ... x G_i x {e} x ... x {e}."""
    if not g.factors:
        return SubgroupChain.trivial(g)
    digits = g.coordinates(g.elements)
    identities = [f.identity for f in g.factors]
    k = len(g.factors)
    members = []
    for i in range(k + 1):
        mask = np.ones(g.order, dtype=bool)
        for j in range(i, k):
            mask &= digits[j] == identities[j]
        members.append(np.flatnonzero(mask))
    return SubgroupChain.of(g, members)


def build_product_chain(
    components: Sequence[FiniteMetricGroup], weights: Sequence[Rational]
) -> tuple[FiniteMetricGroup, SubgroupChain]:
    """The weighted product and its coordinate chain; one component is returned as is."""
    if not components:
        raise ArgumentError("a product chain needs at least one component")
    weights = [to_fraction(w) for w in weights]
    if len(components) == 1 and weights == [1]:
        g = components[0]
        return g, SubgroupChain.trivial(g)
    g = FiniteMetricGroup.direct_product(components, weights)
    return g, coordinate_chain(g)


def hypercube(n: int) -> FiniteMetricGroup:
    """Z_2^n with the normalized Hamming metric."""
    if n < 1:
        raise ArgumentError("hypercube dimension must be positive")
    bit = cyclic_group(2, metric="discrete")
    g = FiniteMetricGroup.direct_product([bit] * n, [Fraction(1, n)] * n)
    return replace(g, name=f"Z2^{n}")


def partial_sum_function(
    f: GroupFunction, n: int, i: int, space: FiniteMetricGroup | None = None
) -> GroupFunction:
    """
    f_{n,i}(x) = (1/n) sum_{j <= i} f(x_j) on X^n, coordinates in the
    product's mixed-radix order (first coordinate most significant).

    When f is 1-Lipschitz on `space` with values in [0, 1], the result is
    checked 1-Lipschitz on X^n with the metric (1/n) sum_j d(x_j, y_j).
    Without a space, X carries the discrete metric (normalized Hamming on
    X^n) and the check runs up to MAX_CHECKED_POINTS points.
    """
    if n < 1 or not 0 <= i <= n:
        raise ArgumentError(f"need 0 <= i <= n and n >= 1, got i={i}, n={n}")
    size = f.size
    if space is not None and space.size != size:
        raise DimensionMismatchError("function and space differ in size")
    digits = np.unravel_index(np.arange(size**n), (size,) * n)
    total = RationalVector.zeros(size**n)
    for j in range(i):
        total = total + f.values.take(digits[j])
    result = GroupFunction(total.scale(Fraction(1, n)))

    if space is None and size**n <= MAX_CHECKED_POINTS:
        space = cyclic_group(size, metric="discrete")
    if space is not None and f.values.ge(0).all() and f.values.le(1).all() and is_lipschitz(f, space):
        power = FiniteMetricGroup.direct_product([space] * n, [Fraction(1, n)] * n)
        assert is_lipschitz(result, power)
    return result


def product_step_checks(
    g: FiniteMetricGroup, chain: SubgroupChain, length: ChainLength | None = None
) -> list[CheckRow]:
    """
    Step i of the coordinate chain has diameter w_i diam(G_i), and the
    squared length is sum_i w_i^2 diam(G_i)^2.
    """
    length = length or chain_length(g, chain)
    factors, weights = (g.factors, g.weights) if g.factors else ((g,), (Fraction(1),))
    expected = [w * f.diameter() for f, w in zip(factors, weights)]
    rows = [
        CheckRow.eq("product_step_diameter", d, e, step=i + 1)
        for i, (d, e) in enumerate(zip(length.step_diameters, expected))
    ]
    rows.append(CheckRow.eq("product_length", length.radicand, sum((e * e for e in expected), Fraction(0))))
    return rows

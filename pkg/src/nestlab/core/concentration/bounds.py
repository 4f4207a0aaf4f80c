"""
Concentration inequalities evaluated exactly on finite groups.

Every quantity is a Fraction except the exponential bound itself, whose
exponent is still formed exactly before a single float evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from nestlab.core.concentration.chains import ChainLength, sup_quotient_diameter
from nestlab.core.concentration.convolution import convolve_function, is_right_invariant
from nestlab.core.concentration.exact_vectors import GroupFunction, MeanVector, Rational, to_fraction
from nestlab.core.concentration.lipschitz import is_lipschitz
from nestlab.core.concentration.metric_group import FiniteMetricGroup
from nestlab.core.errors import ArgumentError, DimensionMismatchError, PreconditionError
from nestlab.models.check_row import CheckRow

FLOAT_SLACK = 1e-9


def azuma_bound_sq(epsilon: Rational, ell_sq: Rational) -> float:
    """2 exp(-eps^2 / (2 ell^2)) from the exact square of ell; 0 when ell = 0."""
    epsilon, ell_sq = to_fraction(epsilon), to_fraction(ell_sq)
    if epsilon <= 0:
        raise ArgumentError(f"epsilon must be positive, got {epsilon}")
    if ell_sq < 0:
        raise ArgumentError("squared length must be nonnegative")
    if ell_sq == 0:
        return 0.0
    exponent = -(epsilon * epsilon) / (2 * ell_sq)
    return 2.0 * math.exp(exponent.numerator / exponent.denominator)


def azuma_bound(epsilon: Rational, ell: Union[Rational, float]) -> float:
    if isinstance(ell, float):
        if ell < 0:
            raise ArgumentError("length must be nonnegative")
        epsilon = to_fraction(epsilon)
        if epsilon <= 0:
            raise ArgumentError(f"epsilon must be positive, got {epsilon}")
        return 0.0 if ell == 0 else 2.0 * math.exp(-float(epsilon) ** 2 / (2 * ell * ell))
    ell = to_fraction(ell)
    if ell < 0:
        raise ArgumentError("length must be nonnegative")
    return azuma_bound_sq(epsilon, ell * ell)


@dataclass(frozen=True)
class ConcentrationProfile:
    mean: Fraction
    variance: Fraction
    tail: Fraction
    epsilon: Fraction


def deviation_mask(f: GroupFunction, centre: Fraction, epsilon: Fraction) -> np.ndarray:
    """|f(x) - centre| >= epsilon."""
    vals = f.values
    den, c = vals.denominator, centre
    # |n/den - c| >= eps  <=>  |n c.den - c.num den| >= eps den c.den
    dev = np.abs(vals.numerators * c.denominator - c.numerator * den)
    threshold = epsilon.numerator * den * c.denominator
    return np.asarray(dev * epsilon.denominator >= threshold, dtype=bool)


def concentration_profile(
    g: FiniteMetricGroup, mu: MeanVector, f: GroupFunction, epsilon: Rational
) -> ConcentrationProfile:
    """mean mu(f), variance mu(f^2) - mu(f)^2 and tail mu{|f - mu(f)| >= eps} on G."""
    epsilon = to_fraction(epsilon)
    if epsilon <= 0:
        raise ArgumentError(f"epsilon must be positive, got {epsilon}")
    if mu.size != g.order or f.size != g.order:
        raise DimensionMismatchError(f"mean and function must both live on {g.name}")
    mean = mu.integrate(f)
    variance = mu.weights.dot(f.values * f.values) - mean * mean
    tail = mu.measure(deviation_mask(f, mean, epsilon))
    return ConcentrationProfile(mean, variance, tail, epsilon)


def markov_check(mu: MeanVector, f: GroupFunction) -> CheckRow:
    """mu{f >= 1} <= mu(f) for f >= 0."""
    if not f.values.ge(0).all():
        raise PreconditionError("Markov inequality needs f >= 0")
    return CheckRow.leq("markov", mu.measure(f.values.ge(1)), mu.integrate(f))


def chebyshev_sandwich(
    g: FiniteMetricGroup, mu: MeanVector, f: GroupFunction, epsilon: Rational
) -> list[CheckRow]:
    """
    tail <= variance / eps^2 and variance <= diam(f)^2 tail + eps^2.
    """
    p = concentration_profile(g, mu, f, epsilon)
    eps_sq = p.epsilon * p.epsilon
    diam = f.diameter()
    return [
        CheckRow.leq("chebyshev", p.tail, p.variance / eps_sq, epsilon=str(p.epsilon)),
        CheckRow.leq(
            "reverse_chebyshev", p.variance, diam * diam * p.tail + eps_sq, epsilon=str(p.epsilon)
        ),
    ]


def azuma_check(profile: ConcentrationProfile, length: ChainLength, **context) -> CheckRow:
    bound = azuma_bound_sq(profile.epsilon, length.radicand)
    return CheckRow.leq("azuma", profile.tail, bound, slack=FLOAT_SLACK, **context)


def diameter_lemma_check(
    g: FiniteMetricGroup,
    f: GroupFunction,
    mu: MeanVector,
    lower: Sequence[int],
    upper: Sequence[int],
) -> list[CheckRow]:
    """
    For f in Lip_1 invariant under right translation by G_0 <= G_1 and mu
    supported on G_1:
    sup over x and y in G_1 of |f(x) - f(x y)| and ||f - Phi_mu f|| are at most
    sup_g diam(G_1/G_0, d^g).
    """
    lower = np.unique(np.asarray(lower, dtype=np.int64))
    upper = np.unique(np.asarray(upper, dtype=np.int64))
    if not np.all(np.isin(mu.support(), upper)):
        raise PreconditionError("mean is not supported on the larger subgroup")
    if not is_right_invariant(f, g, lower):
        raise PreconditionError("function is not invariant under the smaller subgroup")
    if not is_lipschitz(f, g):
        raise PreconditionError("function is not 1-Lipschitz")

    bound = sup_quotient_diameter(g, lower, upper)
    spread = max(abs(f.values - f.values.take(g.mul(g.elements, y))).max() for y in upper)
    drift = (f - convolve_function(mu, f, g)).sup_norm()
    return [
        CheckRow.leq("translation_spread", spread, bound),
        CheckRow.leq("convolution_drift", drift, bound),
    ]

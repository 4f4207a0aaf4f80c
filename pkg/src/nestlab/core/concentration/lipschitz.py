from __future__ import annotations

from fractions import Fraction
from typing import Protocol

import numpy as np

from nestlab.core.concentration.exact_vectors import GroupFunction, Rational, RationalVector, to_fraction
from nestlab.core.errors import ArgumentError, DimensionMismatchError, PreconditionError

INT64_SAFE = 1 << 62


class MetricLike(Protocol):
    """Anything finite with exact distances: metric spaces and metric groups."""

    @property
    def size(self) -> int: ...

    def distances_from(self, x: int) -> RationalVector: ...

    def distance_numerators(self, x: int) -> tuple[np.ndarray, int]: ...


def sup_norm(f: GroupFunction) -> Fraction:
    return f.sup_norm()


def _exact(arr: np.ndarray, bound: int) -> np.ndarray:
    """int64 when every intermediate stays below `bound`, Python ints otherwise."""
    return arr.astype(np.int64) if bound < INT64_SAFE else arr.astype(object)


def is_lipschitz(
    f: GroupFunction, space: MetricLike, constant: Rational = 1, slack: Rational = 0
) -> bool:
    """|f(x) - f(y)| <= constant d(x, y) + slack for all x, y."""
    if f.size != space.size:
        raise DimensionMismatchError("function and space differ in size")
    c, s = to_fraction(constant), to_fraction(slack)
    fd = f.values.denominator
    f_max = max(abs(int(v)) for v in f.values.numerators)
    scaled_values: dict[int, np.ndarray] = {}
    for x in range(space.size):
        row, den = space.distance_numerators(x)
        # both sides scaled by fd * den * c.den * s.den
        left = den * c.denominator * s.denominator
        right = c.numerator * fd * s.denominator
        offset = s.numerator * fd * den * c.denominator
        fn = scaled_values.get(left)
        if fn is None:
            fn = scaled_values[left] = _exact(f.values.numerators, 2 * f_max * left + 1)
        row = _exact(row, abs(right) * (int(np.max(row)) + 1) + abs(offset) + 1)
        lhs = np.abs(fn - fn[x]) * left
        rhs = row * right + offset
        if np.any(np.asarray(lhs > rhs, dtype=bool)):
            return False
    return True


def distance_function(space: MetricLike, point: int) -> GroupFunction:
    """x -> d(x, point); 1-Lipschitz by the triangle inequality."""
    return GroupFunction(space.distances_from(point))


def random_lipschitz_function(
    space: MetricLike,
    rng: np.random.Generator,
    anchors: int = 4,
    resolution: int = 16,
) -> GroupFunction:
    """
    min_j (v_j + d(x, a_j)) clipped to [0, 1], with seeded anchors a_j and
    offsets v_j in {0, 1/resolution, ..., 1}. A minimum of 1-Lipschitz
    functions, so in Lip_1(X; [0, 1]).
    """
    if anchors < 1 or resolution < 1:
        raise ArgumentError("anchors and resolution must be positive")
    points = rng.integers(0, space.size, size=anchors)
    offsets = rng.integers(0, resolution + 1, size=anchors)
    best = None
    for a, v in zip(points, offsets):
        candidate = space.distances_from(int(a)) + Fraction(int(v), resolution)
        best = candidate if best is None else best.minimum(candidate)
    return GroupFunction(best.clip(0, 1))


def lipschitz_regularize(
    space: MetricLike,
    f: GroupFunction,
    ell: Rational,
    epsilon: Rational,
    bounds: tuple[Rational, Rational],
) -> GroupFunction:
    """
    g(x) = min(min_y f(y) + ell d(x, y), t) for f with values in [s, t]
    and |f(x) - f(y)| <= ell d(x, y) + epsilon. Then g is ell-Lipschitz,
    takes values in [s, t] and stays within epsilon of f.
    """
    ell, epsilon = to_fraction(ell), to_fraction(epsilon)
    s, t = (to_fraction(b) for b in bounds)
    if ell < 0 or epsilon < 0 or s > t:
        raise ArgumentError("need ell >= 0, epsilon >= 0 and s <= t")
    if f.size != space.size:
        raise DimensionMismatchError("function and space differ in size")
    if not (f.values.ge(s).all() and f.values.le(t).all()):
        raise PreconditionError(f"f leaves the interval [{s}, {t}]")
    if not is_lipschitz(f, space, ell, epsilon):
        raise PreconditionError(f"f is not {ell}-Lipschitz up to {epsilon}")

    values = []
    for x in range(space.size):
        reach = (f.values + space.distances_from(x).scale(ell)).min()
        values.append(min(reach, t))
    g = GroupFunction.of(values)
    assert g.values.ge(s).all() and g.values.le(t).all()
    assert (f - g).sup_norm() <= epsilon
    assert is_lipschitz(g, space, ell)
    return g

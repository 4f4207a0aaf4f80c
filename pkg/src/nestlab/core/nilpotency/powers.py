from __future__ import annotations

from typing import Optional

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import ArgumentError, NotNilpotentError
from nestlab.core.nilpotency.subring_span import SubringSpan


def power_span(span: SubringSpan, k: int) -> SubringSpan:
    """N^(k): the span of all k-fold products of elements of N."""
    if k < 1:
        raise ArgumentError(f"power must be >= 1, got {k}")
    power = span.span
    for _ in range(k - 1):
        if power.dim == 0:
            break
        power = power.products_with(span.span)
    return SubringSpan(power)


def power_series(span: SubringSpan) -> list[MatrixSpan]:
    """N^(1), N^(2), ... until zero or stabilization."""
    series = [span.span]
    while series[-1].dim:
        nxt = series[-1].products_with(span.span)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def nilpotency_order(span: SubringSpan) -> Optional[int]:
    """
    Least k with N^k = 0, or None when the descending chain of powers
    stabilizes at a nonzero span.
    """
    series = power_series(span)
    if series[-1].dim:
        return None
    return len(series)


def is_nilpotent_element(a: MatrixFp) -> bool:
    return a.power(a.n).is_zero()


def geometric_inverse(a: MatrixFp) -> MatrixFp:
    """(1 - a)^{-1} = sum_{i < n} a^i for nilpotent a."""
    if not is_nilpotent_element(a):
        raise NotNilpotentError("geometric inverse needs a nilpotent element")
    one = a.one()
    total = MatrixFp.zero(a.field, a.n)
    term = one
    for _ in range(a.n):
        total = total + term
        term = term @ a
    assert (one - a) @ total == one and total @ (one - a) == one
    return total

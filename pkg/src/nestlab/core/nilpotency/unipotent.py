"""
Unipotent groups 1 + N for nilpotent spans N and their central series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from nestlab.core.algebra.char_poly import inverse
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import NotNilpotentError
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nilpotency.powers import geometric_inverse, nilpotency_order, power_series
from nestlab.core.nilpotency.subring_span import SubringSpan
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow

logger = LoggerManager.get_logger(__name__)


@dataclass(frozen=True)
class NilpotentClass:
    """
    `nilpotency_class` from the lower central series of 1 + N;
    `central_series` lists its orders, `power_series_orders` the orders
    of 1 + N^(k).
    """

    nilpotency_class: int
    central_series: tuple[int, ...]
    power_series_orders: tuple[int, ...]
    checks: tuple[CheckRow, ...]


def unipotent_group(span: MatrixSpan) -> FiniteMatrixGroup:
    """1 + N as an explicit group."""
    one = MatrixFp.identity(span.field, span.n)
    return FiniteMatrixGroup.of((one + x for x in span.elements()), verify=False)


def commutator(x: MatrixFp, y: MatrixFp, inverses: dict[MatrixFp, MatrixFp]) -> MatrixFp:
    """x^{-1} y^{-1} x y."""
    return inverses[x] @ inverses[y] @ x @ y


def lower_central_series(group: FiniteMatrixGroup) -> list[FiniteMatrixGroup]:
    """
    gamma_1 = G, gamma_{k+1} = [gamma_k, G], stopping at the trivial group
    or when the series stabilizes.
    """
    inverses = {g: inverse(g) for g in group.elements}
    series = [group]
    while series[-1].order > 1:
        current = series[-1]
        gens = list(
            dict.fromkeys(commutator(x, y, inverses) for x in current.elements for y in group.elements)
        )
        nxt = FiniteMatrixGroup.from_generators(gens, group.field, group.n)
        if nxt.order == current.order:
            break
        series.append(nxt)
    return series


def group_class(group: FiniteMatrixGroup) -> Optional[int]:
    series = lower_central_series(group)
    if series[-1].order > 1:
        return None
    return len(series) - 1


def commutator_depth_check(span: SubringSpan, k: int, l: int) -> CheckRow:
    """(1+a)(1+b)(1+a+b)^{-1} lies in 1 + N^(k+l) for a in N^(k), b in N^(l)."""
    series = power_series(span)
    zero = MatrixSpan.zero(span.field, span.n)

    def level(j: int) -> MatrixSpan:
        return series[j - 1] if j <= len(series) else zero

    nk, nl, target = level(k), level(l), level(k + l)
    one = MatrixFp.identity(span.field, span.n)
    ok = True
    for a, b in itertools.product(nk.elements(), nl.elements()):
        c = (one + a) @ (one + b) @ geometric_inverse(-(a + b)) - one
        if not target.contains(c):
            ok = False
            break
    return CheckRow.holds("commutator_depth", ok, k=k, l=l)


def nilpotent_group_class(span: SubringSpan) -> NilpotentClass:
    order = nilpotency_order(span)
    if order is None:
        raise NotNilpotentError("1 + N is a group only for nilpotent N")

    group = unipotent_group(span.span)
    series = lower_central_series(group)
    cls = len(series) - 1
    powers = power_series(span)
    layers = [unipotent_group(s) for s in powers]

    checks = [CheckRow.leq("class_bound", cls, max(order - 1, 0))]
    inverses = {g: inverse(g) for g in group.elements}
    for depth, layer in enumerate(layers, start=1):
        below = layers[depth] if depth < len(layers) else FiniteMatrixGroup.trivial(span.field, span.n)
        normal = all(x @ h @ inverses[x] in layer for x in group.elements for h in layer.elements)
        central = all(commutator(x, h, inverses) in below for x in group.elements for h in layer.elements)
        checks.append(CheckRow.holds("power_layer_normal", normal, depth=depth))
        checks.append(CheckRow.holds("power_layer_central", central, depth=depth))

    logger.debug(f"1 + N of order {group.order} has class {cls}")
    return NilpotentClass(
        nilpotency_class=cls,
        central_series=tuple(g.order for g in series),
        power_series_orders=tuple(g.order for g in layers),
        checks=tuple(checks),
    )

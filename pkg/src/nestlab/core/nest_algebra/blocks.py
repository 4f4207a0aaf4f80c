"""
Block projection pi and block injection iota for an interval partition.

pi sends a in R_E to (e1 a e1, ..., ek a ek) with ei the partition blocks,
iota sums the blocks back into R. pi o iota is the identity and Ker pi is
a nilpotent ideal of R_E.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import MembershipError
from nestlab.core.nest_algebra.stabilizer import (
    corner_operator,
    solve_linear_conditions,
    stabilizer_operator,
    stabilizes,
)
from nestlab.core.nests.chains import IntervalPartition


@dataclass(frozen=True)
class ProjectionResult:
    blocks: tuple[MatrixFp, ...]
    reassembled: MatrixFp


@dataclass(frozen=True)
class KernelNilpotency:
    kernel: MatrixSpan
    order: int
    intervals: int


def in_stabilizer(a: MatrixFp, part: IntervalPartition) -> bool:
    return all(stabilizes(a, e) for e in part.nest.elements)


def project(a: MatrixFp, part: IntervalPartition) -> tuple[MatrixFp, ...]:
    if not in_stabilizer(a, part):
        raise MembershipError("element is not in the stabilizer ring of the nest")
    return tuple(b.matrix @ a @ b.matrix for b in part.blocks())


def inject(blocks: Sequence[MatrixFp]) -> MatrixFp:
    total = MatrixFp.zero(blocks[0].field, blocks[0].n)
    for b in blocks:
        total = total + b
    return total


def project_inject(a: MatrixFp, part: IntervalPartition) -> ProjectionResult:
    blocks = project(a, part)
    reassembled = inject(blocks)
    assert project(reassembled, part) == blocks
    return ProjectionResult(blocks=blocks, reassembled=reassembled)


def kernel_span(part: IntervalPartition) -> MatrixSpan:
    """Ker pi: a in R_E with every block corner zero."""
    operators = [stabilizer_operator(e.matrix) for e in part.nest.elements]
    operators += [corner_operator(b.matrix) for b in part.blocks()]
    return solve_linear_conditions(part.field, part.n, operators)


def kernel_nilpotency(part: IntervalPartition) -> KernelNilpotency:
    """
    Ker pi together with the least k such that every k-fold product of
    kernel elements vanishes; k never exceeds the number of intervals.
    """
    kernel = kernel_span(part)
    power = kernel
    order = 1
    while power.dim:
        power = power.products_with(kernel)
        order += 1
        assert order <= part.intervals + 1
    assert order <= max(part.intervals, 1)
    return KernelNilpotency(kernel=kernel, order=order, intervals=part.intervals)


def kernel_condition_holds(a: MatrixFp, part: IntervalPartition) -> bool:
    """e_{i-1} a e_i = a e_i for every consecutive pair of partition points."""
    return all(
        lo.matrix @ a @ hi.matrix == a @ hi.matrix
        for lo, hi in zip(part.points, part.points[1:])
    )

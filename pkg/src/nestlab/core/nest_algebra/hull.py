from __future__ import annotations

from typing import Sequence

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import ArgumentError
from nestlab.core.lattice.lattice_ops import image, join, lattice_distance
from nestlab.core.lattice.subspace import Subspace, sum_of
from nestlab.models.check_row import CheckRow


def hull_algebra(s_basis: Sequence[MatrixFp]) -> MatrixSpan:
    """
    The unital subalgebra generated by `s_basis`: 1 is adjoined and the
    span is closed under products until it stops growing.
    """
    if not s_basis:
        raise ArgumentError("hull needs at least one matrix to fix the ring")
    one = s_basis[0].one()
    span = MatrixSpan.of([one, *s_basis])
    while True:
        grown = span + span.products_with(span)
        if grown.dim == span.dim:
            return span
        span = grown


def gamma_hull(s_basis: Sequence[MatrixFp], i: Subspace) -> Subspace:
    """Gamma_S(I) = sum of t I over a basis t of the generated subalgebra."""
    return gamma_from_algebra(hull_algebra(s_basis), i)


def gamma_from_algebra(algebra: MatrixSpan, i: Subspace) -> Subspace:
    return sum_of((image(t, i) for t in algebra.basis), i.field, i.ambient_dim)


def power_basis(a: MatrixFp) -> list[MatrixFp]:
    """1, a, a^2, ... up to the first linearly dependent power."""
    powers = [a.one()]
    span = MatrixSpan.of(powers)
    while True:
        nxt = powers[-1] @ a
        if span.contains(nxt):
            return powers
        powers.append(nxt)
        span = MatrixSpan.of(powers)


def hull_checks(algebra: MatrixSpan, i: Subspace, j: Subspace) -> list[CheckRow]:
    """
    The hull is extensive, idempotent, invariant, monotone, join-additive
    and dim(S)-Lipschitz for the lattice metric.
    """
    dim = algebra.dim
    gi, gj = gamma_from_algebra(algebra, i), gamma_from_algebra(algebra, j)
    gij = gamma_from_algebra(algebra, join(i, j))
    rows = [
        CheckRow.leq("hull_delta_bound", gi.delta, dim * i.delta),
        CheckRow.leq(
            "hull_distance_bound", lattice_distance(gi, gj), dim * lattice_distance(i, j)
        ),
        CheckRow.holds("hull_idempotent", gamma_from_algebra(algebra, gi) == gi),
        CheckRow.holds("hull_extensive", i <= gi),
        CheckRow.holds("hull_invariant", all(image(t, gi) <= gi for t in algebra.basis)),
        CheckRow.holds("hull_join_additive", gij == join(gi, gj)),
    ]
    if i <= j:
        rows.append(CheckRow.holds("hull_monotone", gi <= gj))
    return rows

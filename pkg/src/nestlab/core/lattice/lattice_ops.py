"""
Lattice operations on lat(M_n(F_p)), realized on column spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from nestlab.core.algebra.linear import null_space, stack
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import DimensionMismatchError, OrderError
from nestlab.core.lattice.subspace import Subspace
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)


@dataclass(frozen=True)
class JoinMeet:
    join: Subspace
    meet: Subspace


@dataclass(frozen=True)
class LatticeDistance:
    delta_i: Fraction
    delta_j: Fraction
    distance: Fraction


def _check_matrix(m: MatrixFp, s: Subspace) -> None:
    m.field.require_same(s.field)
    if m.n != s.ambient_dim:
        raise DimensionMismatchError(f"matrix of side {m.n} on F^{s.ambient_dim}")


# ---------------------------------------------------------------------------
# Construction from matrices
# ---------------------------------------------------------------------------


def column_space(m: MatrixFp) -> Subspace:
    """aR, identified with the span of the columns of a."""
    return Subspace.span(m.field, m.n, m.entries.T)


def kernel(m: MatrixFp) -> Subspace:
    return Subspace.span(m.field, m.n, null_space(m.entries, m.field.p))


def image(m: MatrixFp, s: Subspace) -> Subspace:
    """aI."""
    _check_matrix(m, s)
    return Subspace.span(m.field, m.n, m.apply(s.basis))


def annihilator(s: Subspace) -> Subspace:
    """
    Vectors q with q . v = 0 for every v in s; s is their common kernel.
    """
    return Subspace.span(
        s.field, s.ambient_dim, null_space(s.basis, s.field.p, s.ambient_dim)
    )


def preimage(m: MatrixFp, s: Subspace) -> Subspace:
    """{x : a x in I}."""
    _check_matrix(m, s)
    q = annihilator(s).basis
    if q.shape[0] == 0:
        return Subspace.full(s.field, s.ambient_dim)
    conditions = (q @ m.entries) % m.field.p
    return Subspace.span(m.field, m.n, null_space(conditions, m.field.p, m.n))


def is_invariant(s: Subspace, m: MatrixFp) -> bool:
    """a I contained in I."""
    return image(m, s) <= s


# ---------------------------------------------------------------------------
# Join / meet / dimension
# ---------------------------------------------------------------------------


def join(i: Subspace, j: Subspace) -> Subspace:
    i.same_ambient(j)
    return Subspace.span(i.field, i.ambient_dim, stack([i.basis, j.basis], i.ambient_dim))


def meet(i: Subspace, j: Subspace) -> Subspace:
    """
    Intersection from the kernel of [B_I ; -B_J]^T: a pair of coefficient
    vectors (x, y) with x B_I = y B_J names a common vector.
    """
    i.same_ambient(j)
    p, n = i.field.p, i.ambient_dim
    if i.dim == 0 or j.dim == 0:
        return Subspace.zero(i.field, n)
    system = np.vstack([i.basis, (-j.basis) % p]).T
    combos = null_space(system, p, i.dim + j.dim)
    vectors = (combos[:, : i.dim] @ i.basis) % p if combos.size else np.zeros((0, n), dtype=np.int64)
    return Subspace.span(i.field, n, vectors)


def join_meet(i: Subspace, j: Subspace) -> JoinMeet:
    return JoinMeet(join=join(i, j), meet=meet(i, j))


def lattice_distance(i: Subspace, j: Subspace) -> Fraction:
    """d_delta(I, J) = delta(I v J) - delta(I ^ J)."""
    jm = join_meet(i, j)
    return jm.join.delta - jm.meet.delta


def delta_and_distance(i: Subspace, j: Subspace) -> LatticeDistance:
    return LatticeDistance(delta_i=i.delta, delta_j=j.delta, distance=lattice_distance(i, j))


# ---------------------------------------------------------------------------
# Complements
# ---------------------------------------------------------------------------


def greedy_complement(sub: Subspace, within: Subspace) -> Subspace:
    """
    C with sub ^ C = 0 and sub v C = within.

    Walks the canonical basis of `within` in pivot order and keeps every
    vector not already in the running span.
    """
    if not sub <= within:
        raise OrderError("complement requested outside the enclosing subspace")
    n = sub.ambient_dim
    running = sub
    kept: list[np.ndarray] = []
    for v in within.basis:
        if running.dim == within.dim:
            break
        if not running.contains_vector(v):
            kept.append(v)
            running = Subspace.span(sub.field, n, stack([running.basis, v], n))
    return Subspace.span(sub.field, n, stack(kept, n))


def relative_complement(a: Subspace, x: Subspace, b: Subspace) -> Subspace:
    """
    y with x ^ y = a and x v y = b, for a <= x <= b.
    """
    a.same_ambient(x)
    x.same_ambient(b)
    if not (a <= x and x <= b):
        raise OrderError("relative complement needs a <= x <= b")
    y = join(a, greedy_complement(x, b))
    jm = join_meet(x, y)
    assert jm.meet == a and jm.join == b
    return y


def perspectivity_witness(i: Subspace, j: Subspace) -> Optional[Subspace]:
    """
    A common complement z of i and j, or None when dim i != dim j.

    With m = i ^ j, i = m + i', j = m + j' and paired bases u_t, v_t of
    i', j', the span of the u_t + v_t meets neither i nor j; adding a
    complement of i + j in the whole space completes it.
    """
    i.same_ambient(j)
    if i.dim != j.dim:
        return None
    field, n = i.field, i.ambient_dim
    m = meet(i, j)
    i_rest = greedy_complement(m, i)
    j_rest = greedy_complement(m, j)
    diagonal = (i_rest.basis + j_rest.basis) % field.p
    outer = greedy_complement(join(i, j), Subspace.full(field, n))
    z = Subspace.span(field, n, stack([diagonal, outer.basis], n))

    full = Subspace.full(field, n)
    zero = Subspace.zero(field, n)
    for s in (i, j):
        jm = join_meet(s, z)
        assert jm.meet == zero and jm.join == full
    logger.debug(f"perspectivity axis of dim {z.dim} for subspaces of dim {i.dim}")
    return z

"""
The fold endomorphisms psi_e(a) = e a e + 1 - e of GL(R_E).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rank_distance, rank_of
from nestlab.core.errors import MembershipError, PreconditionError
from nestlab.core.nest_algebra.envelope import EnvelopeResult, envelope
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nest_algebra.stabilizer import stabilizes
from nestlab.core.nests.chains import IntervalPartition, Nest
from nestlab.core.nests.idempotent import Idempotent
from nestlab.core.nests.nest_ops import is_maximal
from nestlab.models.check_row import CheckRow


def psi_fold(a: MatrixFp, e: Idempotent, nest: Optional[Nest] = None) -> MatrixFp:
    if rank_of(a) < a.n or not stabilizes(a, e):
        raise MembershipError("fold needs an invertible a with e a e = a e")
    if nest is not None and not all(stabilizes(a, f) for f in nest.elements):
        raise MembershipError("element is not in the stabilizer ring of the nest")
    em = e.matrix
    return em @ a @ em + e.complement().matrix


def fold_group(g: FiniteMatrixGroup, e: Idempotent) -> FiniteMatrixGroup:
    """psi_e(G); a subgroup because psi_e is a homomorphism on GL(R_E)."""
    return g.image(lambda a: psi_fold(a, e))


def is_stable(g: FiniteMatrixGroup, nest: Nest) -> bool:
    """
    psi_e(G) inside G for every e in the nest. A group with an element
    outside the stabilizer ring of the nest is not stable.
    """
    for a in g.elements:
        if not all(stabilizes(a, e) for e in nest.elements):
            return False
        if any(psi_fold(a, e) not in g for e in nest.elements):
            return False
    return True


def stable_envelope(g: FiniteMatrixGroup, nest: Nest) -> EnvelopeResult:
    """[G]_E through the finest interval partition of a finite nest."""
    return envelope(g, IntervalPartition.finest(nest))


def fold_chain(g: FiniteMatrixGroup, nest: Nest) -> list[FiniteMatrixGroup]:
    """
    G_i = psi_{e_i}(G) along the nest with endpoints; runs from {1} to G
    when G is stable.
    """
    if not is_stable(g, nest):
        raise PreconditionError("fold chain needs a group stable under the nest")
    chain = [fold_group(g, e) for e in nest.with_endpoints()]
    for lo, hi in zip(chain, chain[1:]):
        assert lo.is_subgroup_of(hi)
    return chain


def folding_modulus(a: MatrixFp, nest: Nest) -> list[CheckRow]:
    """
    d(psi_{e_s}(a), psi_{e_t}(a)) <= |s - t| on the grid s, t in {k/n}
    with e_t the member of rank t n of a maximal nest.
    """
    if not is_maximal(nest):
        raise PreconditionError("folding modulus is defined on maximal nests")
    n = nest.n
    folds = [psi_fold(a, nest.element_of_rank(k)) for k in range(n + 1)]
    rows = []
    for s in range(n + 1):
        for t in range(s + 1, n + 1):
            rows.append(
                CheckRow.leq(
                    "folding_modulus",
                    rank_distance(folds[s], folds[t]),
                    Fraction(t - s, n),
                    s=f"{s}/{n}",
                    t=f"{t}/{n}",
                )
            )
    return rows


def folding_semigroup(a: MatrixFp, nest: Nest) -> list[CheckRow]:
    """psi_{e_s} o psi_{e_t} = psi_{e_min(s,t)} on the members of the nest."""
    points = nest.with_endpoints()
    rows = []
    for i, e in enumerate(points):
        for j, f in enumerate(points):
            lower = points[min(i, j)]
            rows.append(
                CheckRow.holds(
                    "folding_semigroup",
                    psi_fold(psi_fold(a, f), e) == psi_fold(a, lower),
                    s=i,
                    t=j,
                )
            )
    return rows


def psi_is_lipschitz(a: MatrixFp, b: MatrixFp, e: Idempotent) -> CheckRow:
    return CheckRow.leq(
        "fold_is_1_lipschitz", rank_distance(psi_fold(a, e), psi_fold(b, e)), rank_distance(a, b)
    )


def psi_is_multiplicative(a: MatrixFp, b: MatrixFp, e: Idempotent) -> CheckRow:
    return CheckRow.holds(
        "fold_is_multiplicative", psi_fold(a @ b, e) == psi_fold(a, e) @ psi_fold(b, e)
    )

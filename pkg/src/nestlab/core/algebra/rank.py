from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from nestlab.core.algebra.linear import row_reduce
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.models.check_row import CheckRow


@dataclass(frozen=True)
class RankResult:
    """
    Row reduction of a square matrix together with its normalized rank.
    """

    rref: MatrixFp
    rank: int
    rho: Fraction
    pivots: tuple[int, ...]

    @property
    def invertible(self) -> bool:
        return self.rho == 1


def rref_rank(m: MatrixFp) -> RankResult:
    reduced, pivots = row_reduce(m.entries, m.field.p)
    rank = len(pivots)
    return RankResult(
        rref=MatrixFp(m.field, m.n, reduced),
        rank=rank,
        rho=Fraction(rank, m.n),
        pivots=tuple(pivots),
    )


def rank_of(m: MatrixFp) -> int:
    return len(row_reduce(m.entries, m.field.p)[1])


def rho(m: MatrixFp) -> Fraction:
    """The rank function rank(m)/n."""
    return Fraction(rank_of(m), m.n)


def rank_distance(a: MatrixFp, b: MatrixFp) -> Fraction:
    """d(a, b) = rho(a - b)."""
    return rho(a - b)


def rank_axiom_report(a: MatrixFp, b: MatrixFp, c: MatrixFp, d: MatrixFp) -> list[CheckRow]:
    """
    Evaluate the rank-function and rank-metric laws on sampled elements.

    Covers subadditivity, submultiplicativity, the triangle inequality,
    both translation bounds and |rho(a) - rho(b)| <= d(a, b).
    """
    ra, rb = rho(a), rho(b)
    dac, dbd = rank_distance(a, c), rank_distance(b, d)
    return [
        CheckRow.leq("rho_subadditive", rho(a + b), ra + rb),
        CheckRow.leq("rho_submultiplicative", rho(a @ b), min(ra, rb)),
        CheckRow.leq(
            "rank_metric_triangle",
            rank_distance(a, b),
            rank_distance(a, c) + rank_distance(c, b),
        ),
        CheckRow.leq("rank_metric_sum_translation", rank_distance(a + b, c + d), dac + dbd),
        CheckRow.leq("rank_metric_product_translation", rank_distance(a @ b, c @ d), dac + dbd),
        CheckRow.leq("rho_is_1_lipschitz", abs(ra - rb), rank_distance(a, b)),
        CheckRow.eq("rank_metric_symmetric", rank_distance(a, b), rank_distance(b, a)),
    ]


def orthogonal_additivity(e: MatrixFp, f: MatrixFp) -> CheckRow:
    """rho(e + f) = rho(e) + rho(f) for orthogonal idempotents e, f."""
    return CheckRow.eq("rho_orthogonal_additive", rho(e + f), rho(e) + rho(f))

"""
Checks of the modular-lattice and dimension-function laws on samples.
"""

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rank_distance, rho
from nestlab.core.lattice.lattice_ops import (
    column_space,
    image,
    join,
    lattice_distance,
    meet,
)
from nestlab.core.lattice.subspace import Subspace
from nestlab.models.check_row import CheckRow


def modular_law(x: Subspace, y: Subspace, z: Subspace) -> CheckRow:
    """x v (y ^ z) = y ^ (x v z) whenever x <= y; vacuous otherwise."""
    if not x <= y:
        return CheckRow.holds("modular_law", True, vacuous=True)
    return CheckRow.holds("modular_law", join(x, meet(y, z)) == meet(y, join(x, z)))


def delta_modular(i: Subspace, j: Subspace) -> CheckRow:
    return CheckRow.eq(
        "delta_modular",
        join(i, j).delta + meet(i, j).delta,
        i.delta + j.delta,
    )


def delta_strictly_monotone(i: Subspace, j: Subspace) -> CheckRow:
    if not i < j:
        return CheckRow.holds("delta_strictly_monotone", True, vacuous=True)
    return CheckRow.holds("delta_strictly_monotone", i.delta < j.delta)


def birkhoff_identities(i: Subspace, j: Subspace) -> list[CheckRow]:
    d = lattice_distance(i, j)
    v, w = join(i, j).delta, meet(i, j).delta
    return [
        CheckRow.eq("distance_via_join", d, 2 * v - i.delta - j.delta),
        CheckRow.eq("distance_via_meet", d, i.delta + j.delta - 2 * w),
    ]


def lattice_ops_lipschitz(a: Subspace, x: Subspace, y: Subspace) -> CheckRow:
    lhs = lattice_distance(meet(a, x), meet(a, y)) + lattice_distance(join(a, x), join(a, y))
    return CheckRow.leq("meet_join_lipschitz", lhs, lattice_distance(x, y))


def triangle(i: Subspace, j: Subspace, k: Subspace) -> CheckRow:
    return CheckRow.leq(
        "lattice_metric_triangle",
        lattice_distance(i, k),
        lattice_distance(i, j) + lattice_distance(j, k),
    )


def rank_to_dimension_bound(a: MatrixFp, b: MatrixFp, i: Subspace) -> CheckRow:
    """d(aI, bI) <= 2 min(rho(a - b), delta(I))."""
    bound = 2 * min(rank_distance(a, b), i.delta)
    return CheckRow.leq("rank_to_dimension", lattice_distance(image(a, i), image(b, i)), bound)


def rank_matches_dimension(a: MatrixFp) -> CheckRow:
    """The dimension of aR equals rho(a)."""
    return CheckRow.eq("delta_of_column_space", column_space(a).delta, rho(a))


def all_pair_laws(i: Subspace, j: Subspace, k: Subspace) -> list[CheckRow]:
    rows = [
        modular_law(i, join(i, j), k),
        delta_modular(i, j),
        delta_strictly_monotone(meet(i, j), i),
        lattice_ops_lipschitz(k, i, j),
        triangle(i, j, k),
    ]
    rows.extend(birkhoff_identities(i, j))
    return rows

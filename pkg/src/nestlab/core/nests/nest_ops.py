from __future__ import annotations

from fractions import Fraction
from typing import Union

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.linear import stack
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import OrderError
from nestlab.core.lattice.lattice_ops import greedy_complement, join, meet
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nests.chains import Flag, Nest
from nestlab.core.nests.idempotent import Idempotent, projection
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)


def lambda_map(nest: Nest) -> Flag:
    """E -> {eR | e in E}."""
    return Flag(nest.field, nest.n, tuple(e.image() for e in nest.elements))


def _full_grid(n: int) -> set[Fraction]:
    return {Fraction(k, n) for k in range(n + 1)}


def is_maximal(chain: Union[Nest, Flag]) -> bool:
    """
    A nest is maximal iff its rank values together with 0 and 1 exhaust
    {0, 1/n, ..., 1}; a flag iff its dimension values alone do.
    """
    if isinstance(chain, Nest):
        values = set(chain.rho_values()) | {Fraction(0), Fraction(1)}
    else:
        values = set(chain.delta_values())
    return values == _full_grid(chain.n)


def intermediate_idempotent(e0: Idempotent, e1: Idempotent, target: Subspace) -> Idempotent:
    """
    The idempotent f with e0 <= f <= e1 and fR = target.

    The space splits as A + B + C with A = e0R, B = (e1 - e0)R and
    C = ker e1. With W = target ^ B and B' the greedy complement of W in B,
    f0 projects onto W along A + B' + C and f = e0 + f0 (e1 - e0).
    """
    if not e0 <= e1:
        raise OrderError("intermediate idempotent needs e0 <= e1")
    a_space = e0.image()
    if not (a_space <= target and target <= e1.image()):
        raise OrderError("target subspace is not between e0R and e1R")

    field, n = e0.field, e0.n
    gap = e1.difference(e0)
    b_space = gap.image()
    c_space = e1.kernel()
    w_space = meet(target, b_space)
    b_rest = greedy_complement(w_space, b_space)
    along = Subspace.span(field, n, stack([a_space.basis, b_rest.basis, c_space.basis], n))
    f0 = projection(w_space, along)

    f = Idempotent(e0.matrix + f0.matrix @ gap.matrix)
    assert e0 <= f and f <= e1 and f.image() == target
    return f


def nest_from_flag(flag: Flag) -> Nest:
    """Lift a flag to a nest with the same images, bottom-up."""
    one = Idempotent.one(flag.field, flag.n)
    prev = Idempotent.zero(flag.field, flag.n)
    elements = []
    for s in flag.subspaces:
        prev = intermediate_idempotent(prev, one, s)
        elements.append(prev)
    nest = Nest(flag.field, flag.n, tuple(elements))
    assert lambda_map(nest) == flag
    return nest


def _tower(lo: Subspace, hi: Subspace) -> list[Subspace]:
    """Strictly increasing subspaces from lo (exclusive) to hi (exclusive)."""
    out = []
    current = lo
    for v in hi.basis:
        if current.dim + 1 >= hi.dim:
            break
        if not current.contains_vector(v):
            current = join(current, Subspace.span(lo.field, lo.ambient_dim, v))
            out.append(current)
    return out


def complete_to_maximal_nest(nest: Nest) -> Nest:
    """
    Refine `nest` to a maximal nest containing it. Already-maximal input
    is returned unchanged; otherwise 0 and 1 are adjoined and every rank
    gap is filled along a greedy subspace tower.
    """
    if is_maximal(nest):
        return nest
    points = nest.with_endpoints()
    elements: list[Idempotent] = [points[0]]
    for lo, hi in zip(points, points[1:]):
        current = lo
        for s in _tower(lo.image(), hi.image()):
            current = intermediate_idempotent(current, hi, s)
            elements.append(current)
        elements.append(hi)
    result = Nest(nest.field, nest.n, tuple(elements))
    assert is_maximal(result)
    logger.debug(f"completed nest of length {len(nest)} to length {len(result)}")
    return result


def standard_nest(field: FieldSpec, n: int) -> Nest:
    """0 < diag(1,0,...) < ... < 1."""
    return Nest(
        field,
        n,
        tuple(Idempotent(MatrixFp.diagonal(field, [1] * k + [0] * (n - k))) for k in range(n + 1)),
    )


def standard_flag(field: FieldSpec, n: int) -> Flag:
    return Flag(field, n, tuple(Subspace.standard(field, n, k) for k in range(n + 1)))


def rank_order_isomorphism(nest: Nest) -> bool:
    """
    rho restricted to the nest with endpoints is strictly increasing and,
    for a maximal nest, hits every value k/n.
    """
    values = [e.rho for e in nest.with_endpoints()]
    increasing = all(a < b for a, b in zip(values, values[1:]))
    return increasing and (not is_maximal(nest) or set(values) == _full_grid(nest.n))

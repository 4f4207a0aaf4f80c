from __future__ import annotations

from typing import Optional

from nestlab.core.algebra.char_poly import char_poly_factor
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import NonSplitError, ScaleError
from nestlab.core.lattice.enumeration import enumerate_subspaces
from nestlab.core.lattice.lattice_ops import is_invariant, join, preimage
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nests.chains import Flag
from nestlab.core.nests.nest_ops import is_maximal
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_BRUTEFORCE_SIDE = 3


def triangularize(a: MatrixFp) -> Flag:
    """
    A maximal flag of a-invariant subspaces.

    Raises NonSplitError with the root-free cofactor when the
    characteristic polynomial has an irreducible factor of degree >= 2.
    Each step lifts an eigenvector of a on the current quotient: roots
    are tried in ascending order and the new vector is the first
    canonical basis vector of (a - r)^{-1}(V) outside V.
    """
    factorization = char_poly_factor(a)
    if not factorization.splits:
        raise NonSplitError(factorization.cofactor)

    field, n = a.field, a.n
    one = a.one()
    current = Subspace.zero(field, n)
    members = [current]
    for _ in range(n):
        for root, _mult in factorization.roots:
            lifted = preimage(a - one.scale(root), current)
            if lifted.dim > current.dim:
                v = next(w for w in lifted.basis if not current.contains_vector(w))
                current = join(current, Subspace.span(field, n, v))
                members.append(current)
                break
        else:
            raise AssertionError("split characteristic polynomial without eigenvector")

    flag = Flag(field, n, tuple(members))
    assert is_maximal(flag) and all(is_invariant(s, a) for s in flag.subspaces)
    logger.debug(f"triangularized with roots {factorization.roots}")
    return flag


def invariant_flag_bruteforce(a: MatrixFp) -> Optional[Flag]:
    """First a-invariant maximal flag in enumeration order, or None."""
    if a.n > MAX_BRUTEFORCE_SIDE:
        raise ScaleError(f"exhaustive flag search limited to n <= {MAX_BRUTEFORCE_SIDE}")
    field, n = a.field, a.n
    layers = [
        [s for s in enumerate_subspaces(field, n, k) if is_invariant(s, a)]
        for k in range(n + 1)
    ]

    def extend(chain: list[Subspace]) -> Optional[list[Subspace]]:
        k = len(chain)
        if k == n + 1:
            return chain
        for s in layers[k]:
            if chain[-1] <= s:
                found = extend(chain + [s])
                if found is not None:
                    return found
        return None

    found = extend([Subspace.zero(field, n)])
    return Flag(field, n, tuple(found)) if found is not None else None

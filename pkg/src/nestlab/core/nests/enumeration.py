from typing import Iterator

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.lattice.enumeration import enumerate_subspaces, gaussian_binomial
from nestlab.core.lattice.lattice_ops import meet
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nests.chains import Flag, Nest
from nestlab.core.nests.idempotent import Idempotent, projection


def count_idempotents(field: FieldSpec, n: int) -> int:
    """One idempotent per (image, complement) pair: sum_k [n, k]_q q^(k(n-k))."""
    q = field.p
    return sum(gaussian_binomial(n, k, q) * q ** (k * (n - k)) for k in range(n + 1))


def enumerate_idempotents(field: FieldSpec, n: int) -> list[Idempotent]:
    """
    Every idempotent of M_n(F_p), one per pair of complementary
    subspaces (image, kernel).
    """
    by_dim = {k: list(enumerate_subspaces(field, n, k)) for k in range(n + 1)}
    out = []
    for k in range(n + 1):
        for image in by_dim[k]:
            for ker in by_dim[n - k]:
                if meet(image, ker).dim == 0:
                    out.append(projection(image, ker))
    return out


def enumerate_maximal_flags(field: FieldSpec, n: int) -> list[Flag]:
    by_dim = {k: list(enumerate_subspaces(field, n, k)) for k in range(n + 1)}
    out: list[Flag] = []

    def extend(chain: list[Subspace]) -> None:
        k = len(chain)
        if k == n + 1:
            out.append(Flag(field, n, tuple(chain)))
            return
        for s in by_dim[k]:
            if chain[-1] <= s:
                extend(chain + [s])

    extend([Subspace.zero(field, n)])
    return out


def enumerate_maximal_nests(field: FieldSpec, n: int) -> Iterator[Nest]:
    """Maximal nests, endpoints included, by depth-first rank extension."""
    by_rank: dict[int, list[Idempotent]] = {}
    for e in enumerate_idempotents(field, n):
        by_rank.setdefault(e.image().dim, []).append(e)

    def extend(chain: list[Idempotent]) -> Iterator[Nest]:
        k = len(chain)
        if k == n + 1:
            yield Nest(field, n, tuple(chain))
            return
        for e in by_rank.get(k, []):
            if chain[-1] <= e:
                yield from extend(chain + [e])

    yield from extend([Idempotent.zero(field, n)])

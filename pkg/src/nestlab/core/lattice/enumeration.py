import itertools
from typing import Iterator

import numpy as np

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.errors import ScaleError
from nestlab.core.lattice.subspace import Subspace

MAX_SUBSPACES = 1 << 14


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(field: FieldSpec, n: int) -> int:
    return sum(gaussian_binomial(n, k, field.p) for k in range(n + 1))


def enumerate_subspaces(field: FieldSpec, n: int, dim: int | None = None) -> Iterator[Subspace]:
    """
    Every subspace of F_p^n (optionally of one dimension), generated as
    reduced row-echelon bases: by dimension, then pivot set, then free
    entries in lexicographic order.
    """
    if count_subspaces(field, n) > MAX_SUBSPACES:
        raise ScaleError(f"F_{field.p}^{n} has too many subspaces to enumerate")
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            slots = [
                (r, c)
                for r, pc in enumerate(pivots)
                for c in range(pc + 1, n)
                if c not in pivot_set
            ]
            for values in itertools.product(range(field.p), repeat=len(slots)):
                basis = np.zeros((k, n), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    basis[r, pc] = 1
                for (r, c), v in zip(slots, values):
                    basis[r, c] = v
                yield Subspace(field, n, basis, tuple(pivots))


def random_subspace(field: FieldSpec, n: int, rng: np.random.Generator) -> Subspace:
    """Span of k seeded vectors, k uniform in [0, n]; small dimensions stay likely."""
    k = int(rng.integers(0, n + 1))
    vectors = rng.integers(0, field.p, size=(k, n), dtype=np.int64)
    return Subspace.span(field, n, vectors)

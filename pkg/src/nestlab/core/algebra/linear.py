"""
Gaussian elimination over F_p on plain numpy arrays.

Every structure in the package (matrices, subspaces, spans of matrices,
stabilizer conditions) reduces to these few routines. Arrays are int64
residues; elimination is leftmost-pivot-first, so the reduced form is the
unique reduced row-echelon form and can be compared structurally.
"""

from typing import Iterable, Optional

import numpy as np


def as_rows(rows, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """
    Coerce `rows` to a fresh 2-D int64 array of residues mod p.

    `ncols` is required when `rows` may be empty.
    """
    arr = np.array(rows, dtype=np.int64)
    if arr.size == 0:
        if ncols is None:
            if arr.ndim == 2:
                ncols = arr.shape[1]
            else:
                raise ValueError("ncols is required for an empty row set")
        return np.zeros((0, ncols), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr % p


def row_reduce(rows, p: int, ncols: Optional[int] = None) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row-echelon form over F_p.

    Returns the full reduced array (zero rows kept at the bottom) and the
    pivot columns in increasing order.
    """
    a = as_rows(rows, p, ncols)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def reduced_basis(rows, p: int, ncols: Optional[int] = None) -> tuple[np.ndarray, list[int]]:
    """
    Canonical basis of the row space: the nonzero rows of the RREF.
    """
    a, pivots = row_reduce(rows, p, ncols)
    return a[: len(pivots)].copy(), pivots


def rank(rows, p: int, ncols: Optional[int] = None) -> int:
    return len(row_reduce(rows, p, ncols)[1])


def null_space(rows, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """
    Basis of {x : A x = 0} as rows, one per free column (ascending).
    """
    a, pivots = row_reduce(rows, p, ncols)
    n = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-a[i, f]) % p
    return basis


def in_row_space(vector, basis: np.ndarray, pivots: list[int], p: int) -> bool:
    """
    Membership of `vector` in the row space of an RREF `basis`.
    """
    return not reduce_against(vector, basis, pivots, p).any()


def reduce_against(vector, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """
    Remainder of `vector` after clearing every pivot column of an RREF basis.
    """
    v = np.array(vector, dtype=np.int64).reshape(-1) % p
    for i, pc in enumerate(pivots):
        if v[pc]:
            v = (v - v[pc] * basis[i]) % p
    return v


def stack(blocks: Iterable[np.ndarray], ncols: int) -> np.ndarray:
    parts = [np.asarray(b, dtype=np.int64).reshape(-1, ncols) for b in blocks]
    parts = [b for b in parts if b.size]
    if not parts:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(parts)

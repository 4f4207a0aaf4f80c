from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from nestlab.core.algebra.linear import row_reduce
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.poly_fp import PolyFp
from nestlab.core.errors import ScaleError, SingularMatrixError
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_CHAR_POLY_SIDE = 12


@dataclass(frozen=True)
class CharPolyFactorization:
    """
    det(X*1 - m) split into its linear part and the root-free cofactor.

    `roots` lists (root, multiplicity) in ascending residue order.
    """

    char_poly: PolyFp
    roots: tuple[tuple[int, int], ...]
    cofactor: PolyFp

    @property
    def splits(self) -> bool:
        return self.cofactor.degree == 0

    def roots_with_multiplicity(self) -> dict[int, int]:
        return dict(self.roots)

    def expanded_roots(self) -> list[int]:
        return [r for r, k in self.roots for _ in range(k)]


def _hessenberg(m: MatrixFp) -> np.ndarray:
    """Upper Hessenberg form by elementary similarity transforms."""
    p = m.field.p
    h = m.entries.copy()
    n = m.n
    for k in range(n - 2):
        nz = np.nonzero(h[k + 1 :, k])[0]
        if nz.size == 0:
            continue
        i = k + 1 + int(nz[0])
        if i != k + 1:
            h[[i, k + 1]] = h[[k + 1, i]]
            h[:, [i, k + 1]] = h[:, [k + 1, i]]
        inv = pow(int(h[k + 1, k]), p - 2, p)
        for j in range(k + 2, n):
            if h[j, k] == 0:
                continue
            u = (int(h[j, k]) * inv) % p
            h[j] = (h[j] - u * h[k + 1]) % p
            h[:, k + 1] = (h[:, k + 1] + u * h[:, j]) % p
    return h


def char_poly(m: MatrixFp) -> PolyFp:
    """
    det(X*1 - m), via Hessenberg reduction and the leading-minor recurrence.
    """
    if m.n > MAX_CHAR_POLY_SIDE:
        raise ScaleError(f"characteristic polynomial limited to n <= {MAX_CHAR_POLY_SIDE}")
    field = m.field
    h = _hessenberg(m)
    x = PolyFp.x(field)
    polys = [PolyFp.constant(field, 1)]
    for k in range(1, m.n + 1):
        nxt = (x - PolyFp.constant(field, int(h[k - 1, k - 1]))) * polys[k - 1]
        t = 1
        for i in range(k - 1, 0, -1):
            t = (t * int(h[i, i - 1])) % field.p
            if t == 0:
                break
            coef = (int(h[i - 1, k - 1]) * t) % field.p
            if coef:
                nxt = nxt - polys[i - 1].scale(coef)
        polys.append(nxt)
    return polys[m.n]


def factor_linear(poly: PolyFp) -> tuple[tuple[tuple[int, int], ...], PolyFp]:
    """
    Peel off linear factors by exhaustive root search and trial division.
    """
    field = poly.field
    roots = []
    rest = poly
    for r in field.residues():
        if rest.degree < 1:
            break
        mult = 0
        while rest.degree >= 1 and rest.evaluate(r) == 0:
            rest = rest // PolyFp.linear(field, r)
            mult += 1
        if mult:
            roots.append((r, mult))
    return tuple(roots), rest


def char_poly_factor(m: MatrixFp) -> CharPolyFactorization:
    poly = char_poly(m)
    roots, cofactor = factor_linear(poly)
    logger.debug(f"char poly {poly} roots={roots} cofactor={cofactor}")
    return CharPolyFactorization(char_poly=poly, roots=roots, cofactor=cofactor)


def determinant(m: MatrixFp) -> int:
    """(-1)^n * chi_m(0)."""
    c0 = char_poly(m).coeff(0)
    return c0 if m.n % 2 == 0 else (-c0) % m.field.p


def inverse(m: MatrixFp) -> MatrixFp:
    """Exact inverse by reducing [m | 1]."""
    n = m.n
    augmented = np.hstack([m.entries, np.eye(n, dtype=np.int64)])
    reduced, pivots = row_reduce(augmented, m.field.p)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise SingularMatrixError("matrix is not invertible")
    return MatrixFp(m.field, n, reduced[:, n:].copy())

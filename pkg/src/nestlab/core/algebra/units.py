from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.poly_fp import PolyFp
from nestlab.core.errors import NotApplicableError, RelationViolatedError


def unit_from_polynomial_relation(a: MatrixFp, poly: PolyFp) -> MatrixFp:
    """
    Invert `a` from an annihilating polynomial p = q*X + c with c != 0.

    If p(a) = 0 then a * q(a) = -c, so b = -c^{-1} q(a) is a two-sided
    inverse of a.
    """
    a.field.require_same(poly.field)
    c = poly.coeff(0)
    if c == 0:
        raise NotApplicableError("relation has zero constant term")
    if not poly.evaluate_matrix(a).is_zero():
        raise RelationViolatedError(f"{poly} does not annihilate the matrix")

    q = PolyFp(poly.field, poly.coeffs[1:])
    b = q.evaluate_matrix(a).scale(-a.field.inv(c))

    one = a.one()
    assert b @ a == one and a @ b == one
    return b

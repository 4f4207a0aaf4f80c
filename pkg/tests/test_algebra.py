from fractions import Fraction

import numpy as np
import pytest

from nestlab.core.algebra.char_poly import char_poly_factor, determinant, inverse
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp, enumerate_matrices, random_matrix
from nestlab.core.algebra.poly_fp import PolyFp
from nestlab.core.algebra.rank import orthogonal_additivity, rank_axiom_report, rank_distance, rref_rank
from nestlab.core.algebra.units import unit_from_polynomial_relation
from nestlab.core.errors import (
    ArgumentError,
    DimensionMismatchError,
    NotApplicableError,
    RelationViolatedError,
    SingularMatrixError,
)


class TestFieldAndMatrix:
    @pytest.mark.parametrize("p", [0, 1, 4, 9, 257])
    def test_rejects_non_prime_or_out_of_range_moduli(self, p):
        with pytest.raises(ArgumentError):
            FieldSpec(p)

    def test_entries_are_reduced(self):
        a = MatrixFp.of(3, [[4, -1], [5, 3]])
        assert a.entries.tolist() == [[1, 2], [2, 0]]

    def test_mixed_fields_are_rejected(self):
        with pytest.raises(DimensionMismatchError):
            MatrixFp.of(2, [[1]]) + MatrixFp.of(3, [[1]])

    def test_enumeration_covers_all_of_m2_f2(self, f2):
        assert len(set(enumerate_matrices(f2, 2))) == 16


class TestRank:
    def test_identity(self):
        r = rref_rank(MatrixFp.identity(FieldSpec(5), 4))
        assert (r.rank, r.rho, r.invertible) == (4, 1, True)

    def test_zero(self, f3):
        r = rref_rank(MatrixFp.zero(f3, 3))
        assert (r.rank, r.rho) == (0, 0)

    def test_shear_is_invertible(self):
        r = rref_rank(MatrixFp.of(2, [[1, 1], [0, 1]]))
        assert r.rank == 2 and r.rho == 1

    def test_rank_distance_examples(self, f2):
        a = MatrixFp.of(2, [[1, 1], [0, 1]])
        one = MatrixFp.identity(f2, 2)
        assert rank_distance(a, a) == 0
        assert rank_distance(one, MatrixFp.zero(f2, 2)) == 1
        assert rank_distance(a, one) == Fraction(1, 2)

    def test_axioms_hold_on_samples(self, f3, rng):
        for _ in range(25):
            a, b, c, d = (random_matrix(f3, 3, rng) for _ in range(4))
            assert all(row.passed for row in rank_axiom_report(a, b, c, d))

    def test_orthogonal_idempotents_add(self, f2):
        e = MatrixFp.diagonal(f2, [1, 0, 0])
        f = MatrixFp.diagonal(f2, [0, 1, 1])
        row = orthogonal_additivity(e, f)
        assert row.passed and row.lhs == 1


class TestCharPoly:
    def test_nilpotent_block(self):
        fac = char_poly_factor(MatrixFp.of(2, [[0, 1], [0, 0]]))
        assert fac.char_poly == PolyFp.of(2, [0, 0, 1])
        assert fac.roots_with_multiplicity() == {0: 2}
        assert fac.splits

    def test_swap_over_f2(self):
        fac = char_poly_factor(MatrixFp.of(2, [[0, 1], [1, 0]]))
        assert fac.char_poly == PolyFp.of(2, [1, 0, 1])
        assert fac.roots_with_multiplicity() == {1: 2}
        assert fac.splits

    def test_companion_of_x2_x_1_does_not_split(self):
        fac = char_poly_factor(MatrixFp.of(2, [[0, 1], [1, 1]]))
        assert fac.char_poly == PolyFp.of(2, [1, 1, 1])
        assert fac.roots == ()
        assert not fac.splits
        assert str(fac.cofactor) == "X^2 + X + 1"

    def test_cayley_hamilton_and_determinant(self, f3, rng):
        for _ in range(20):
            a = random_matrix(f3, 3, rng)
            fac = char_poly_factor(a)
            assert fac.char_poly.evaluate_matrix(a).is_zero()
            assert (determinant(a) != 0) == rref_rank(a).invertible

    def test_inverse_of_singular_raises(self, f2):
        with pytest.raises(SingularMatrixError):
            inverse(MatrixFp.zero(f2, 2))


class TestUnitFromRelation:
    def test_identity(self, f2):
        one = MatrixFp.identity(f2, 2)
        assert unit_from_polynomial_relation(one, PolyFp.of(2, [-1, 1])) == one

    def test_involution_over_f3(self):
        a = MatrixFp.of(3, [[0, 1], [1, 0]])
        assert unit_from_polynomial_relation(a, PolyFp.of(3, [-1, 0, 1])) == a

    def test_shear_over_f2(self):
        a = MatrixFp.of(2, [[1, 1], [0, 1]])
        assert unit_from_polynomial_relation(a, PolyFp.of(2, [1, 0, 1])) == a

    def test_zero_constant_term(self, f2):
        with pytest.raises(NotApplicableError):
            unit_from_polynomial_relation(MatrixFp.identity(f2, 2), PolyFp.of(2, [0, 1, 1]))

    def test_relation_must_annihilate(self):
        a = MatrixFp.of(2, [[0, 1], [1, 1]])
        with pytest.raises(RelationViolatedError):
            unit_from_polynomial_relation(a, PolyFp.of(2, [1, 1]))

    def test_char_poly_inverts_units(self, f3, rng):
        found = 0
        while found < 10:
            a = random_matrix(f3, 3, rng)
            if determinant(a) == 0:
                continue
            b = unit_from_polynomial_relation(a, char_poly_factor(a).char_poly)
            assert b == inverse(a)
            assert np.array_equal((b @ a).entries, np.eye(3, dtype=np.int64))
            found += 1

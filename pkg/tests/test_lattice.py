from fractions import Fraction
from itertools import product

import pytest

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp, random_matrix
from nestlab.core.errors import OrderError
from nestlab.core.lattice.enumeration import count_subspaces, enumerate_subspaces, gaussian_binomial
from nestlab.core.lattice.lattice_ops import (
    column_space,
    delta_and_distance,
    image,
    is_invariant,
    join_meet,
    kernel,
    meet,
    perspectivity_witness,
    preimage,
    relative_complement,
)
from nestlab.core.lattice.laws import all_pair_laws, rank_matches_dimension
from nestlab.core.lattice.subspace import Subspace


def e1(field):
    return Subspace.standard(field, 2, 1)


def e2(field):
    return Subspace.span(field, 2, [[0, 1]])


class TestColumnSpace:
    def test_examples(self, f2):
        assert column_space(MatrixFp.zero(f2, 2)) == Subspace.zero(f2, 2)
        assert column_space(MatrixFp.identity(f2, 2)) == Subspace.full(f2, 2)
        assert column_space(MatrixFp.of(2, [[1, 0], [1, 0]])) == Subspace.span(f2, 2, [[1, 1]])

    def test_canonical_form_is_structural(self, f3):
        a = Subspace.span(f3, 3, [[1, 2, 0], [2, 1, 0]])
        b = Subspace.span(f3, 3, [[0, 0, 0], [1, 2, 0]])
        assert a == b and hash(a) == hash(b)

    def test_delta_matches_rank(self, f3, rng):
        for _ in range(20):
            assert rank_matches_dimension(random_matrix(f3, 3, rng)).passed

    def test_kernel_and_preimage(self, f2):
        a = MatrixFp.of(2, [[0, 1], [0, 0]])
        assert kernel(a) == e1(f2)
        assert preimage(a, Subspace.zero(f2, 2)) == e1(f2)
        assert preimage(a, e1(f2)) == Subspace.full(f2, 2)
        assert image(a, Subspace.full(f2, 2)) == e1(f2)
        assert is_invariant(e1(f2), a) and not is_invariant(e2(f2), a)


class TestJoinMeet:
    def test_idempotence(self, f2):
        i = e1(f2)
        jm = join_meet(i, i)
        assert (jm.join, jm.meet) == (i, i)

    def test_coordinate_axes(self, f2):
        jm = join_meet(e1(f2), e2(f2))
        assert jm.join == Subspace.full(f2, 2)
        assert jm.meet == Subspace.zero(f2, 2)

    def test_bounds(self, f3):
        j = Subspace.span(f3, 3, [[1, 1, 0]])
        jm = join_meet(Subspace.zero(f3, 3), j)
        assert (jm.join, jm.meet) == (j, Subspace.zero(f3, 3))

    def test_meet_of_planes_in_f2_cubed(self, f2):
        i = Subspace.span(f2, 3, [[1, 0, 0], [0, 1, 0]])
        j = Subspace.span(f2, 3, [[0, 1, 0], [0, 0, 1]])
        assert meet(i, j) == Subspace.span(f2, 3, [[0, 1, 0]])


class TestDistance:
    def test_examples(self, f2):
        assert delta_and_distance(e1(f2), e1(f2)).distance == 0
        d = delta_and_distance(e1(f2), Subspace.full(f2, 2))
        assert (d.delta_i, d.delta_j, d.distance) == (Fraction(1, 2), 1, Fraction(1, 2))
        assert delta_and_distance(e1(f2), e2(f2)).distance == 1

    def test_laws_hold_on_all_triples_of_f2_squared(self, f2):
        subspaces = list(enumerate_subspaces(f2, 2))
        for i, j, k in product(subspaces, repeat=3):
            assert all(row.passed for row in all_pair_laws(i, j, k))


class TestComplements:
    def test_relative_complement_examples(self, f2):
        zero, full = Subspace.zero(f2, 2), Subspace.full(f2, 2)
        assert relative_complement(zero, e1(f2), full) == e2(f2)
        assert relative_complement(zero, zero, e1(f2)) == e1(f2)
        assert relative_complement(e1(f2), e1(f2), full) == full

    def test_relative_complement_needs_a_chain(self, f2):
        with pytest.raises(OrderError):
            relative_complement(e2(f2), e1(f2), Subspace.full(f2, 2))

    def test_perspectivity_examples(self, f2):
        assert perspectivity_witness(e1(f2), e2(f2)) == Subspace.span(f2, 2, [[1, 1]])
        full = Subspace.full(f2, 2)
        assert perspectivity_witness(full, full) == Subspace.zero(f2, 2)
        assert perspectivity_witness(e1(f2), full) is None

    def test_equal_dimension_is_enough_in_f3_cubed(self, f3):
        lines = list(enumerate_subspaces(f3, 3, dim=1))
        for i in lines[:6]:
            for j in lines:
                z = perspectivity_witness(i, j)
                for s in (i, j):
                    jm = join_meet(s, z)
                    assert jm.meet == Subspace.zero(f3, 3) and jm.join == Subspace.full(f3, 3)


class TestEnumeration:
    @pytest.mark.parametrize("p, n, expected", [(2, 2, 5), (2, 3, 16), (3, 2, 6)])
    def test_count_matches_enumeration(self, p, n, expected):
        field = FieldSpec(p)
        assert count_subspaces(field, n) == expected
        assert len(set(enumerate_subspaces(field, n))) == expected

    def test_gaussian_binomial(self):
        assert gaussian_binomial(3, 1, 2) == 7
        assert gaussian_binomial(4, 2, 2) == 35

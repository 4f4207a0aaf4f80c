from fractions import Fraction

import pytest

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import OrderError, StructureError
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nests.chains import Flag, IntervalPartition, Nest
from nestlab.core.nests.enumeration import (
    count_idempotents,
    enumerate_idempotents,
    enumerate_maximal_flags,
    enumerate_maximal_nests,
)
from nestlab.core.nests.idempotent import Idempotent
from nestlab.core.nests.nest_ops import (
    complete_to_maximal_nest,
    intermediate_idempotent,
    is_maximal,
    lambda_map,
    nest_from_flag,
    rank_order_isomorphism,
    standard_flag,
    standard_nest,
)


def diag(field, *values) -> Idempotent:
    return Idempotent(MatrixFp.diagonal(field, list(values)))


class TestIdempotents:
    def test_rejects_non_idempotent(self):
        with pytest.raises(StructureError):
            Idempotent(MatrixFp.of(2, [[1, 1], [1, 0]]))

    @pytest.mark.parametrize("n, expected", [(1, 2), (2, 8), (3, 58)])
    def test_count_over_f2(self, f2, n, expected):
        assert count_idempotents(f2, n) == expected
        assert len(set(enumerate_idempotents(f2, n))) == expected

    def test_order_and_difference(self, f2):
        e, f = diag(f2, 1, 0, 0), diag(f2, 1, 1, 0)
        assert e <= f and e < f and not f <= e
        gap = f.difference(e)
        assert gap == diag(f2, 0, 1, 0)
        assert gap.is_orthogonal(e) and gap <= f

    def test_order_is_a_partial_order_on_m2(self, f2):
        elements = enumerate_idempotents(f2, 2)
        for e in elements:
            assert e <= e
            for f in elements:
                if e <= f and f <= e:
                    assert e == f


class TestLambdaAndMaximality:
    def test_lambda_examples(self, f2):
        zero, one = Idempotent.zero(f2, 2), Idempotent.one(f2, 2)
        assert lambda_map(Nest(f2, 2, (zero, one))).subspaces == (Subspace.zero(f2, 2), Subspace.full(f2, 2))
        nest = Nest(f2, 2, (zero, diag(f2, 1, 0), one))
        assert lambda_map(nest) == standard_flag(f2, 2)
        assert lambda_map(Nest(f2, 2)).subspaces == ()

    def test_maximality_examples(self, f2):
        zero, one = Idempotent.zero(f2, 2), Idempotent.one(f2, 2)
        assert is_maximal(Nest(f2, 2, (zero, diag(f2, 1, 0), one)))
        assert not is_maximal(Nest(f2, 2, (zero, one)))
        assert is_maximal(standard_flag(f2, 2))

    def test_lambda_hits_every_maximal_flag_of_m2_f2(self, f2):
        flags = enumerate_maximal_flags(f2, 2)
        images = {lambda_map(nest) for nest in enumerate_maximal_nests(f2, 2)}
        assert len(flags) == 3
        assert images == set(flags)

    def test_rank_is_an_order_isomorphism_on_maximal_nests(self, f2):
        for nest in enumerate_maximal_nests(f2, 3):
            assert rank_order_isomorphism(nest)
            assert [e.rho for e in nest.with_endpoints()] == [Fraction(k, 3) for k in range(4)]

    def test_nest_must_be_strictly_increasing(self, f2):
        e = diag(f2, 1, 0)
        with pytest.raises(OrderError):
            Nest(f2, 2, (e, e))


class TestConstructions:
    def test_intermediate_is_forced_at_the_bottom(self, f2):
        e0, e1 = diag(f2, 1, 0, 0), Idempotent.one(f2, 3)
        assert intermediate_idempotent(e0, e1, e0.image()) == e0

    def test_intermediate_examples(self, f2):
        zero, one = Idempotent.zero(f2, 2), Idempotent.one(f2, 2)
        assert intermediate_idempotent(zero, one, Subspace.standard(f2, 2, 1)) == diag(f2, 1, 0)
        f = intermediate_idempotent(diag(f2, 1, 0, 0), Idempotent.one(f2, 3), Subspace.standard(f2, 3, 2))
        assert f == diag(f2, 1, 1, 0)

    def test_intermediate_rejects_target_outside_sandwich(self, f2):
        with pytest.raises(OrderError):
            intermediate_idempotent(
                diag(f2, 1, 0), Idempotent.one(f2, 2), Subspace.span(f2, 2, [[0, 1]])
            )

    def test_nest_from_flag_round_trips(self, f2):
        flag = Flag(f2, 2, (Subspace.zero(f2, 2), Subspace.full(f2, 2)))
        assert nest_from_flag(flag).elements == (Idempotent.zero(f2, 2), Idempotent.one(f2, 2))
        assert nest_from_flag(standard_flag(f2, 2)) == standard_nest(f2, 2)
        for flag in enumerate_maximal_flags(f2, 3):
            nest = nest_from_flag(flag)
            assert lambda_map(nest) == flag
            assert nest.rho_values() == [Fraction(k, 3) for k in range(4)]

    def test_completion(self, f2):
        zero, one = Idempotent.zero(f2, 2), Idempotent.one(f2, 2)
        completed = complete_to_maximal_nest(Nest(f2, 2, (zero, one)))
        assert completed.elements == (zero, diag(f2, 1, 0), one)

        maximal = standard_nest(f2, 3)
        assert complete_to_maximal_nest(maximal) is maximal

        empty = complete_to_maximal_nest(Nest(f2, 3))
        assert len(empty) == 4 and is_maximal(empty)

    def test_completion_contains_the_input(self, f2):
        nest = Nest(f2, 3, (diag(f2, 1, 1, 0),))
        completed = complete_to_maximal_nest(nest)
        assert nest.elements[0] in completed
        assert is_maximal(completed)


class TestIntervalPartition:
    def test_blocks_sum_to_one(self, f2):
        part = IntervalPartition.finest(standard_nest(f2, 3))
        blocks = part.blocks()
        assert part.intervals == 3
        total = blocks[0].matrix + blocks[1].matrix + blocks[2].matrix
        assert total == MatrixFp.identity(f2, 3)
        assert all(a.is_orthogonal(b) for i, a in enumerate(blocks) for b in blocks[i + 1 :])

    def test_points_must_come_from_the_nest(self, f2):
        nest = Nest(f2, 2, (diag(f2, 1, 0),))
        with pytest.raises(OrderError):
            IntervalPartition(nest, (Idempotent.zero(f2, 2), diag(f2, 0, 1), Idempotent.one(f2, 2)))

    def test_refinement(self, f2):
        nest = standard_nest(f2, 3)
        assert IntervalPartition.finest(nest).refines(IntervalPartition.trivial(nest))
        assert not IntervalPartition.trivial(nest).refines(IntervalPartition.finest(nest))

import pytest

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import MembershipError, NonSplitError, PreconditionError
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nest_algebra.blocks import kernel_nilpotency, project, project_inject
from nestlab.core.nest_algebra.envelope import envelope, envelope_by_blocks, envelope_group
from nestlab.core.nest_algebra.folding import (
    fold_chain,
    folding_modulus,
    folding_semigroup,
    is_stable,
    psi_fold,
    psi_is_lipschitz,
    psi_is_multiplicative,
)
from nestlab.core.nest_algebra.hull import gamma_hull, hull_algebra, hull_checks
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nest_algebra.stabilizer import (
    is_unit_in_stabilizer,
    ringrose_conditions,
    stabilizer_basis,
    unit_group_elements,
)
from nestlab.core.nest_algebra.triangularize import invariant_flag_bruteforce, triangularize
from nestlab.core.nests.chains import IntervalPartition, Nest
from nestlab.core.nests.idempotent import Idempotent
from nestlab.core.nests.nest_ops import standard_nest


def unit(field, n, i, j) -> MatrixFp:
    return MatrixFp.identity(field, n) + MatrixFp.unit(field, n, i, j)


def half_nest(field) -> Nest:
    return Nest.of(field, 2, [MatrixFp.diagonal(field, [1, 0])])


class TestStabilizer:
    def test_upper_triangular_for_a_single_idempotent(self, f2):
        alg = stabilizer_basis(half_nest(f2))
        expected = MatrixSpan.of(
            [MatrixFp.unit(f2, 2, 0, 0), MatrixFp.unit(f2, 2, 0, 1), MatrixFp.unit(f2, 2, 1, 1)]
        )
        assert alg.dim == 3 and alg.span == expected

    def test_empty_nest_gives_everything(self, f3):
        assert stabilizer_basis(Nest(f3, 2)).dim == 4

    def test_standard_maximal_nest(self, f2):
        assert stabilizer_basis(standard_nest(f2, 3)).dim == 6

    def test_units(self, f2):
        alg = stabilizer_basis(half_nest(f2))
        assert is_unit_in_stabilizer(MatrixFp.identity(f2, 2), alg).is_unit
        shear = MatrixFp.of(2, [[1, 1], [0, 1]])
        check = is_unit_in_stabilizer(shear, alg)
        assert check.is_unit and check.inverse == shear
        assert not is_unit_in_stabilizer(MatrixFp.of(2, [[1, 0], [1, 1]]), alg).is_unit

    def test_ringrose_conditions_agree(self, f2):
        e = Idempotent(MatrixFp.diagonal(f2, [1, 1, 0]))
        for a in MatrixSpan.full(f2, 3).elements():
            first, second, third = ringrose_conditions(a, e)
            assert first == second == third

    def test_unit_group_of_upper_triangular_f3(self, f3):
        assert len(unit_group_elements(stabilizer_basis(half_nest(f3)))) == 12


class TestBlocks:
    def test_project_inject(self, f3):
        part = IntervalPartition.finest(half_nest(f3))
        result = project_inject(MatrixFp.of(3, [[2, 1], [0, 1]]), part)
        assert result.blocks == (MatrixFp.diagonal(f3, [2, 0]), MatrixFp.diagonal(f3, [0, 1]))
        assert result.reassembled == MatrixFp.diagonal(f3, [2, 1])

    def test_block_diagonal_is_a_fixpoint(self, f3):
        a = MatrixFp.diagonal(f3, [2, 1])
        assert project_inject(a, IntervalPartition.finest(half_nest(f3))).reassembled == a

    def test_kernel_element_projects_to_zero(self, f2):
        part = IntervalPartition.finest(half_nest(f2))
        blocks = project(MatrixFp.unit(f2, 2, 0, 1), part)
        assert all(b.is_zero() for b in blocks)

    def test_projection_needs_the_stabilizer(self, f2):
        with pytest.raises(MembershipError):
            project(MatrixFp.of(2, [[1, 0], [1, 1]]), IntervalPartition.finest(half_nest(f2)))

    def test_kernel_nilpotency_examples(self, f2):
        trivial = kernel_nilpotency(IntervalPartition.trivial(Nest(f2, 2)))
        assert trivial.kernel.dim == 0 and trivial.order == 1

        half = kernel_nilpotency(IntervalPartition.finest(half_nest(f2)))
        assert half.kernel == MatrixSpan.of([MatrixFp.unit(f2, 2, 0, 1)])
        assert half.order == 2

        full = kernel_nilpotency(IntervalPartition.finest(standard_nest(f2, 3)))
        assert full.kernel.dim == 3 and full.order == 3


class TestEnvelope:
    def test_trivial_group_in_m2(self, f2):
        g = FiniteMatrixGroup.trivial(f2, 2)
        env = envelope_group(g, IntervalPartition.finest(half_nest(f2)))
        assert env.order == 2
        assert unit(f2, 2, 0, 1) in env

    def test_trivial_group_in_m3_is_unitriangular(self, f2):
        nest = standard_nest(f2, 3)
        result = envelope(FiniteMatrixGroup.trivial(f2, 3), IntervalPartition.finest(nest))
        assert result.group.order == 8 == result.predicted_order
        assert not result.group.is_abelian()

    def test_refining_enlarges(self, f2):
        nest = standard_nest(f2, 3)
        g = FiniteMatrixGroup.from_generators([unit(f2, 3, 0, 2)])
        coarse = envelope_group(g, IntervalPartition.trivial(nest))
        fine = envelope_group(g, IntervalPartition.finest(nest))
        assert g.is_subgroup_of(coarse) and coarse.is_subgroup_of(fine)

    def test_conjugation_and_block_description(self, f2):
        nest = standard_nest(f2, 3)
        part = IntervalPartition.finest(nest)
        units = unit_group_elements(stabilizer_basis(nest))
        g = FiniteMatrixGroup.from_generators([unit(f2, 3, 0, 1)])
        env = envelope_group(g, part)
        assert envelope_by_blocks(units, g, part) == env
        for a in units:
            assert envelope_group(g.conjugate(a), part) == env.conjugate(a)

    def test_outside_the_unit_group(self, f2):
        g = FiniteMatrixGroup.from_generators([MatrixFp.of(2, [[1, 0], [1, 1]])])
        with pytest.raises(MembershipError):
            envelope(g, IntervalPartition.finest(half_nest(f2)))


class TestFolding:
    def test_endpoints_and_example(self, f2):
        shear = MatrixFp.of(2, [[1, 1], [0, 1]])
        assert psi_fold(shear, Idempotent.zero(f2, 2)).is_identity()
        assert psi_fold(shear, Idempotent.one(f2, 2)) == shear
        assert psi_fold(shear, Idempotent(MatrixFp.diagonal(f2, [1, 0]))).is_identity()

    def test_fold_rejects_non_stabilizer(self, f2):
        with pytest.raises(MembershipError):
            psi_fold(MatrixFp.of(2, [[1, 0], [1, 1]]), Idempotent(MatrixFp.diagonal(f2, [1, 0])))

    def test_fold_chain_of_unitriangular_group(self, f2):
        nest = standard_nest(f2, 3)
        g = FiniteMatrixGroup.from_generators([unit(f2, 3, 0, 1), unit(f2, 3, 1, 2)])
        assert is_stable(g, nest)
        assert [h.order for h in fold_chain(g, nest)] == [1, 1, 2, 8]

    def test_group_outside_the_stabilizer_is_not_stable(self, f2):
        g = FiniteMatrixGroup.from_generators([MatrixFp.of(2, [[1, 0], [1, 1]])])
        assert not is_stable(g, half_nest(f2))
        with pytest.raises(PreconditionError):
            fold_chain(g, half_nest(f2))

    def test_fold_image_outside_the_group(self, f3):
        # psi_e([[2, 1], [0, 2]]) = diag(2, 1), not a power of the generator
        g = FiniteMatrixGroup.from_generators([MatrixFp.of(3, [[2, 1], [0, 2]])])
        assert not is_stable(g, half_nest(f3))
        assert is_stable(FiniteMatrixGroup.from_generators([MatrixFp.of(3, [[1, 1], [0, 1]])]), half_nest(f3))

    def test_modulus_and_semigroup(self, f3):
        nest = standard_nest(f3, 3)
        a = unit(f3, 3, 0, 1) @ unit(f3, 3, 1, 2) @ MatrixFp.diagonal(f3, [2, 1, 2])
        assert all(row.passed for row in folding_modulus(a, nest))
        assert all(row.passed for row in folding_semigroup(a, nest))
        b = unit(f3, 3, 0, 2)
        for e in nest.elements:
            assert psi_is_lipschitz(a, b, e).passed
            assert psi_is_multiplicative(a, b, e).passed


class TestHull:
    def test_scalars_fix_everything(self, f2):
        i = Subspace.span(f2, 2, [[1, 1]])
        assert gamma_hull([MatrixFp.identity(f2, 2)], i) == i

    def test_shear_algebra(self, f2):
        s = [MatrixFp.identity(f2, 2), MatrixFp.unit(f2, 2, 0, 1)]
        assert gamma_hull(s, Subspace.span(f2, 2, [[0, 1]])) == Subspace.full(f2, 2)
        assert gamma_hull(s, Subspace.standard(f2, 2, 1)) == Subspace.standard(f2, 2, 1)

    def test_hull_laws(self, f3):
        algebra = hull_algebra([MatrixFp.of(3, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])])
        i = Subspace.span(f3, 3, [[1, 2, 0]])
        j = Subspace.span(f3, 3, [[1, 2, 0], [0, 0, 1]])
        assert all(row.passed for row in hull_checks(algebra, i, j))


class TestTriangularize:
    def test_jordan_block(self, f2):
        flag = triangularize(MatrixFp.of(2, [[0, 1], [0, 0]]))
        assert flag.subspaces == (Subspace.zero(f2, 2), Subspace.standard(f2, 2, 1), Subspace.full(f2, 2))

    def test_swap(self, f2):
        flag = triangularize(MatrixFp.of(2, [[0, 1], [1, 0]]))
        assert flag.subspaces[1] == Subspace.span(f2, 2, [[1, 1]])

    def test_non_split(self):
        a = MatrixFp.of(2, [[0, 1], [1, 1]])
        with pytest.raises(NonSplitError) as info:
            triangularize(a)
        assert str(info.value.factor) == "X^2 + X + 1"
        assert invariant_flag_bruteforce(a) is None

    def test_agrees_with_exhaustive_search_on_m2_f3(self, f3):
        for a in MatrixSpan.full(f3, 2).elements():
            try:
                triangularize(a)
                found = True
            except NonSplitError:
                found = False
            assert found == (invariant_flag_bruteforce(a) is not None)

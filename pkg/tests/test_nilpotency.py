import pytest

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import ArgumentError, NotNilpotentError, ScaleError, StructureError
from nestlab.core.nilpotency.powers import geometric_inverse, nilpotency_order, power_span
from nestlab.core.nilpotency.radical import (
    largest_nilpotent_ideal,
    levitzki_elementwise,
    levitzki_radical,
    lifted_trace_power,
    radical_by_composition,
    trace_chain,
)
from nestlab.core.nilpotency.subring_span import SubringSpan, full_matrix_algebra, upper_triangular
from nestlab.core.nilpotency.unipotent import (
    commutator_depth_check,
    group_class,
    nilpotent_group_class,
    unipotent_group,
)


def e(field, n, i, j) -> MatrixFp:
    return MatrixFp.unit(field, n, i, j)


class TestPowers:
    def test_strict_upper_3x3(self, f2):
        strict = upper_triangular(f2, 3, strict=True)
        assert power_span(strict, 1).span == strict.span
        assert power_span(strict, 2).span == MatrixSpan.of([e(f2, 3, 0, 2)])
        assert power_span(strict, 3).dim == 0
        assert nilpotency_order(strict) == 3

    def test_power_must_be_positive(self, f2):
        with pytest.raises(ArgumentError):
            power_span(upper_triangular(f2, 2, strict=True), 0)

    def test_orders(self, f2):
        assert nilpotency_order(SubringSpan(MatrixSpan.zero(f2, 2))) == 1
        assert nilpotency_order(SubringSpan.of([MatrixFp.diagonal(f2, [1, 0])])) is None

    def test_span_must_be_closed(self, f2):
        with pytest.raises(StructureError):
            SubringSpan.of([e(f2, 2, 0, 1), e(f2, 2, 1, 0)])

    def test_geometric_inverse(self, f2, f3):
        assert geometric_inverse(MatrixFp.zero(f2, 2)).is_identity()
        assert geometric_inverse(e(f2, 2, 0, 1)) == MatrixFp.identity(f2, 2) + e(f2, 2, 0, 1)
        a = e(f3, 3, 0, 1) + e(f3, 3, 1, 2)
        assert geometric_inverse(a) == MatrixFp.identity(f3, 3) + a + a @ a

    def test_geometric_inverse_needs_nilpotent(self, f2):
        with pytest.raises(NotNilpotentError):
            geometric_inverse(MatrixFp.identity(f2, 2))


class TestLevitzki:
    def test_full_matrix_algebra_is_simple(self, f2):
        assert levitzki_radical(full_matrix_algebra(f2, 2)).dim == 0

    def test_upper_triangular(self, f2):
        assert levitzki_radical(upper_triangular(f2, 2)).span == MatrixSpan.of([e(f2, 2, 0, 1)])
        lev = levitzki_radical(upper_triangular(f2, 3))
        assert lev.span == upper_triangular(f2, 3, strict=True).span

    def test_dual_numbers(self, f3):
        alg = SubringSpan.of([MatrixFp.identity(f3, 2), e(f3, 2, 0, 1)], unital=True)
        assert levitzki_radical(alg).span == MatrixSpan.of([e(f3, 2, 0, 1)])

    @pytest.mark.parametrize("n", [2, 3])
    def test_oracles_agree(self, f2, n):
        alg = upper_triangular(f2, n)
        lev = levitzki_radical(alg).span
        assert levitzki_elementwise(alg) == lev
        assert largest_nilpotent_ideal(alg) == lev

    def test_block_algebra(self, f2):
        basis = [
            MatrixFp.identity(f2, 3),
            e(f2, 3, 0, 1) + e(f2, 3, 0, 2),
            e(f2, 3, 1, 1),
            e(f2, 3, 0, 2),
        ]
        alg = SubringSpan.of(basis, unital=True)
        lev = levitzki_radical(alg)
        assert lev.span == MatrixSpan.of([e(f2, 3, 0, 1), e(f2, 3, 0, 2)])
        assert largest_nilpotent_ideal(alg) == lev.span

    def test_large_prime_upper_triangular(self):
        f67 = FieldSpec(67)
        assert levitzki_radical(upper_triangular(f67, 2)).span == MatrixSpan.of([e(f67, 2, 0, 1)])
        f17 = FieldSpec(17)
        lev = levitzki_radical(upper_triangular(f17, 3))
        assert lev.span == upper_triangular(f17, 3, strict=True).span

    def test_large_prime_full_matrix_algebra(self):
        assert levitzki_radical(full_matrix_algebra(FieldSpec(17), 4)).dim == 0

    def test_composition_scan_refuses_large_modules(self):
        with pytest.raises(ScaleError):
            radical_by_composition(upper_triangular(FieldSpec(67), 2))

    def test_non_unital_input(self, f2):
        with pytest.raises(StructureError):
            levitzki_radical(upper_triangular(f2, 2, strict=True))
        with pytest.raises(StructureError):
            radical_by_composition(SubringSpan.of([MatrixFp.diagonal(f2, [1, 0])]))

    def test_lifted_trace_power(self, f2):
        one = MatrixFp.identity(f2, 4)
        assert lifted_trace_power(one, 1, 2) == 0
        assert lifted_trace_power(one, 4, 8) == 4
        assert lifted_trace_power(e(f2, 4, 0, 1), 2, 4) == 0

    def test_scalars_need_every_trace_step(self, f2):
        # tr(I_4^(2^i)) = 4 vanishes mod 2 and mod 4, not mod 8
        scalars = SubringSpan.of([MatrixFp.identity(f2, 4)], unital=True)
        assert [s.dim for s in trace_chain(scalars)] == [1, 1, 0]
        assert levitzki_radical(scalars).dim == 0

    def test_dual_numbers_in_blocks(self, f2):
        nil = e(f2, 4, 0, 1) + e(f2, 4, 2, 3)
        alg = SubringSpan.of([MatrixFp.identity(f2, 4), nil], unital=True)
        assert [s.dim for s in trace_chain(alg)] == [2, 2, 1]
        assert levitzki_radical(alg).span == MatrixSpan.of([nil])

    @pytest.mark.parametrize(
        "build",
        [
            lambda f: full_matrix_algebra(f, 2),
            lambda f: full_matrix_algebra(f, 3),
            lambda f: upper_triangular(f, 3),
            lambda f: upper_triangular(f, 4),
            lambda f: SubringSpan.of([MatrixFp.identity(f, 3)], unital=True),
            lambda f: SubringSpan.of(
                [MatrixFp.identity(f, 3), e(f, 3, 0, 1) + e(f, 3, 0, 2), e(f, 3, 1, 1), e(f, 3, 0, 2)],
                unital=True,
            ),
        ],
        ids=["M2", "M3", "T3", "T4", "scalars3", "block"],
    )
    def test_trace_chain_matches_composition_scan(self, f2, build):
        alg = build(f2)
        assert levitzki_radical(alg).span == radical_by_composition(alg)

    def test_trace_chain_matches_composition_scan_odd(self, f3):
        for alg in (upper_triangular(f3, 3), full_matrix_algebra(f3, 2)):
            assert levitzki_radical(alg).span == radical_by_composition(alg)


class TestUnipotent:
    def test_class_of_small_spans(self, f2):
        result = nilpotent_group_class(SubringSpan.of([e(f2, 2, 0, 1)]))
        assert result.nilpotency_class == 1 and result.central_series == (2, 1)
        assert nilpotent_group_class(SubringSpan(MatrixSpan.zero(f2, 2))).nilpotency_class == 0

    def test_strict_upper_3x3(self, f2):
        result = nilpotent_group_class(upper_triangular(f2, 3, strict=True))
        assert result.nilpotency_class == 2
        assert result.central_series == (8, 2, 1)
        assert result.power_series_orders == (8, 2)
        assert all(row.passed for row in result.checks)

    def test_brute_force_agrees(self, f3):
        strict = upper_triangular(f3, 3, strict=True)
        assert group_class(unipotent_group(strict.span)) == 2

    def test_not_nilpotent(self, f2):
        with pytest.raises(NotNilpotentError):
            nilpotent_group_class(SubringSpan.of([MatrixFp.diagonal(f2, [1, 0])]))

    @pytest.mark.parametrize("k, l", [(1, 1), (1, 2), (2, 1), (1, 3)])
    def test_commutator_depth(self, f2, k, l):
        assert commutator_depth_check(upper_triangular(f2, 4, strict=True), k, l).passed

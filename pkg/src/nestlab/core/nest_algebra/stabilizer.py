from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from nestlab.core.algebra.char_poly import inverse
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.linear import null_space, stack
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.algebra.rank import rank_of
from nestlab.core.errors import ScaleError
from nestlab.core.lattice.lattice_ops import column_space, image
from nestlab.core.nests.chains import Nest
from nestlab.core.nests.idempotent import Idempotent
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_UNIT_ENUMERATION = 1 << 16


def stabilizer_operator(e: MatrixFp) -> np.ndarray:
    """
    The linear map a -> e a e - a e on row-major flattened matrices.

    For row-major vec, vec(X a Y) = kron(X, Y^T) vec(a).
    """
    n, p = e.n, e.field.p
    eye = np.eye(n, dtype=np.int64)
    et = e.entries.T
    return (np.kron(e.entries, et) - np.kron(eye, et)) % p


def corner_operator(e: MatrixFp) -> np.ndarray:
    """The linear map a -> e a e on row-major flattened matrices."""
    return np.kron(e.entries, e.entries.T) % e.field.p


def solve_linear_conditions(field: FieldSpec, n: int, operators: Iterable[np.ndarray]) -> MatrixSpan:
    """Span of all a with op(vec a) = 0 for every operator."""
    system = stack(operators, n * n)
    if system.shape[0] == 0:
        return MatrixSpan.full(field, n)
    return MatrixSpan.from_vectors(field, n, null_space(system, field.p, n * n))


@dataclass(frozen=True)
class NestAlgebra:
    """
    The stabilizer ring R_E = {a : e a e = a e for every e in E}.
    """

    nest: Nest
    span: MatrixSpan

    @property
    def field(self) -> FieldSpec:
        return self.nest.field

    @property
    def n(self) -> int:
        return self.nest.n

    @property
    def basis(self) -> list[MatrixFp]:
        return self.span.basis

    @property
    def dim(self) -> int:
        return self.span.dim

    def contains(self, a: MatrixFp) -> bool:
        return all(stabilizes(a, e) for e in self.nest.elements)


@dataclass(frozen=True)
class UnitCheck:
    is_unit: bool
    inverse: Optional[MatrixFp] = None


def stabilizes(a: MatrixFp, e: Idempotent) -> bool:
    """e a e = a e."""
    ae = a @ e.matrix
    return e.matrix @ ae == ae


def stabilizer_basis(nest: Nest) -> NestAlgebra:
    span = solve_linear_conditions(
        nest.field, nest.n, (stabilizer_operator(e.matrix) for e in nest.elements)
    )
    alg = NestAlgebra(nest=nest, span=span)
    assert span.is_closed_under_products()
    logger.debug(f"stabilizer ring of a nest of length {len(nest)} has dim {span.dim}")
    return alg


def is_unit_in_stabilizer(a: MatrixFp, alg: NestAlgebra) -> UnitCheck:
    """GL(R_E) = R_E intersected with GL(R); the inverse stays in R_E."""
    if not alg.contains(a) or rank_of(a) < a.n:
        return UnitCheck(is_unit=False)
    inv = inverse(a)
    assert alg.contains(inv)
    return UnitCheck(is_unit=True, inverse=inv)


def ringrose_conditions(a: MatrixFp, e: Idempotent) -> tuple[bool, bool, bool]:
    """
    (e a e = a e, a(eR) within eR, (1-e) a (1-e) = (1-e) a); these agree.
    """
    f = e.complement().matrix
    first = stabilizes(a, e)
    second = image(a, column_space(e.matrix)) <= column_space(e.matrix)
    third = f @ a @ f == f @ a
    return first, second, third


def unit_group_elements(alg: NestAlgebra) -> list[MatrixFp]:
    """GL(R_E), enumerated through the coordinates of R_E."""
    if alg.span.size() > MAX_UNIT_ENUMERATION:
        raise ScaleError(f"R_E has {alg.span.size()} elements; too many to enumerate units")
    return [a for a in alg.span.elements() if rank_of(a) == a.n]

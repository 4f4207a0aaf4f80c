"""
Explicit matrix groups as metric groups under the rank metric
d(a, b) = rank(a - b) / n, which is bi-invariant on invertible matrices.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rho
from nestlab.core.concentration.chains import ChainLength, SubgroupChain, chain_length
from nestlab.core.concentration.exact_vectors import RationalVector
from nestlab.core.concentration.metric_group import MAX_TABLE_ORDER, FiniteMetricGroup
from nestlab.core.errors import ScaleError, StructureError
from nestlab.core.nest_algebra.folding import fold_chain
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nests.chains import Nest
from nestlab.core.nests.nest_ops import standard_nest
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow

logger = LoggerManager.get_logger(__name__)


def matrix_label(m: MatrixFp) -> str:
    return "|".join("".join(str(int(v)) for v in row) for row in m.entries)


def matrix_group_bridge(group: FiniteMatrixGroup) -> FiniteMetricGroup:
    if group.order > MAX_TABLE_ORDER:
        raise ScaleError(f"matrix group of order {group.order} exceeds {MAX_TABLE_ORDER}")
    group.verify()
    elements = group.elements
    table = np.array(
        [[group.index(a @ b) for b in elements] for a in elements], dtype=np.int64
    )
    one = group.identity
    norm = RationalVector.of([rho(a - one) for a in elements])
    metric = FiniteMetricGroup.from_table(
        table, norm, [matrix_label(a) for a in elements], name=f"GL-sub(p={group.field.p}, n={group.n})"
    )
    if not metric.bi_invariant:
        raise StructureError("rank metric failed to be bi-invariant")
    return metric


def unitriangular_group(field: FieldSpec, n: int) -> FiniteMatrixGroup:
    """UT(n, F_p): 1 + strictly upper triangular."""
    one = MatrixFp.identity(field, n)
    gens = [one + MatrixFp.unit(field, n, i, j) for i in range(n) for j in range(i + 1, n)]
    if not gens:
        return FiniteMatrixGroup.trivial(field, n)
    return FiniteMatrixGroup.from_generators(gens, field, n)


def fold_metric_chain(group: FiniteMatrixGroup, nest: Nest) -> tuple[FiniteMetricGroup, SubgroupChain]:
    """G_i = psi_{e_i}(G) as a chain of the rank-metric group."""
    metric = matrix_group_bridge(group)
    members = [[group.index(a) for a in sub.elements] for sub in fold_chain(group, nest)]
    return metric, SubgroupChain.of(metric, members)


def unitriangular_fold_length(n: int, p: int = 2) -> tuple[FiniteMetricGroup, ChainLength]:
    field = FieldSpec(p)
    group = unitriangular_group(field, n)
    metric, chain = fold_metric_chain(group, standard_nest(field, n))
    length = chain_length(metric, chain)
    logger.debug(f"UT({n}, F_{p}) fold chain: radicand {length.radicand}")
    return metric, length


def fold_bound_check(n: int, length: ChainLength) -> CheckRow:
    """Squared length of the fold chain is at most 16 / n."""
    return CheckRow.leq("fold_chain_bound", length.radicand, Fraction(16, n), n=n)

from __future__ import annotations

import itertools
from dataclasses import dataclass

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rank_of
from nestlab.core.errors import MembershipError
from nestlab.core.nest_algebra.blocks import in_stabilizer, inject, kernel_span
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nests.chains import IntervalPartition
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)


@dataclass(frozen=True)
class EnvelopeResult:
    """
    The envelope group with the sizes entering its order formula
    |[G]| = |Ker pi| * prod |e_i G e_i|.
    """

    group: FiniteMatrixGroup
    kernel_size: int
    block_orders: tuple[int, ...]

    @property
    def predicted_order(self) -> int:
        total = self.kernel_size
        for k in self.block_orders:
            total *= k
        return total


def require_units_of_stabilizer(g: FiniteMatrixGroup, part: IntervalPartition) -> None:
    for a in g.elements:
        if not in_stabilizer(a, part) or rank_of(a) < a.n:
            raise MembershipError("group element outside GL(R_E)")


def block_images(g: FiniteMatrixGroup, part: IntervalPartition) -> list[list[MatrixFp]]:
    """e_i G e_i for every block, each listed without repeats."""
    out = []
    for b in part.blocks():
        corner = dict.fromkeys(b.matrix @ a @ b.matrix for a in g.elements)
        out.append(list(corner))
    return out


def envelope(g: FiniteMatrixGroup, part: IntervalPartition) -> EnvelopeResult:
    """
    [G]_{E,e} = (1 + Ker pi) * iota(prod e_i G e_i).
    """
    require_units_of_stabilizer(g, part)
    kernel = kernel_span(part)
    images = block_images(g, part)
    one = MatrixFp.identity(g.field, g.n)

    diagonal = [inject(choice) for choice in itertools.product(*images)]
    elements = [(one + k) @ d for k in kernel.elements() for d in diagonal]
    group = FiniteMatrixGroup.of(elements)
    result = EnvelopeResult(
        group=group,
        kernel_size=kernel.size(),
        block_orders=tuple(len(im) for im in images),
    )
    logger.debug(
        f"envelope order {group.order} = {result.kernel_size} * {result.block_orders}"
    )
    return result


def envelope_group(g: FiniteMatrixGroup, part: IntervalPartition) -> FiniteMatrixGroup:
    return envelope(g, part).group


def envelope_by_blocks(
    units: list[MatrixFp], g: FiniteMatrixGroup, part: IntervalPartition
) -> FiniteMatrixGroup:
    """
    {a in GL(R_E) : e_i a e_i in e_i G e_i for all i}, filtered from an
    explicit list of GL(R_E).
    """
    images = [set(im) for im in block_images(g, part)]
    blocks = part.blocks()
    kept = [
        a
        for a in units
        if all(b.matrix @ a @ b.matrix in im for b, im in zip(blocks, images))
    ]
    return FiniteMatrixGroup.of(kept, verify=False)

from typing import Optional

from nestlab.core.algebra.char_poly import char_poly_factor
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp, enumerate_matrices, random_matrix
from nestlab.core.errors import NonSplitError
from nestlab.core.lattice.lattice_ops import is_invariant
from nestlab.core.nest_algebra.triangularize import (
    MAX_BRUTEFORCE_SIDE,
    invariant_flag_bruteforce,
    triangularize,
)
from nestlab.core.nests.chains import Flag
from nestlab.core.nests.nest_ops import is_maximal
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


def triangularize_checks(a: MatrixFp) -> list[CheckRow]:
    """
    One row per outcome: a verified invariant maximal flag, or the
    non-split factor. Up to n = 3 the exhaustive flag search must agree.
    """
    splits = char_poly_factor(a).splits
    ctx = {"matrix": str(a.entries.tolist())}
    flag: Optional[Flag] = None
    try:
        flag = triangularize(a)
    except NonSplitError as exc:
        ctx["factor"] = str(exc.factor)
        rows = [CheckRow.holds("non_split", not splits, **ctx)]
    else:
        rows = [
            CheckRow.holds("splits", splits, **ctx),
            CheckRow.holds("flag_maximal", is_maximal(flag), **ctx),
            CheckRow.holds("flag_invariant", all(is_invariant(s, a) for s in flag.subspaces), **ctx),
        ]
    if a.n <= MAX_BRUTEFORCE_SIDE:
        oracle = invariant_flag_bruteforce(a)
        rows.append(CheckRow.holds("oracle_agreement", (oracle is None) == (flag is None), **ctx))
    return rows


class TriangularizeRunner(ExperimentRunner):
    """
    Triangularization against the exhaustive oracle: input matrices,
    then all of M_n(F_p) at the exhaustive scale, then seeded samples.
    """

    command = "triangularize"

    async def run(self) -> ExperimentReport:
        trials: list[Trial] = []
        offset = 0
        for path in self.ctx.inputs:
            for m in self.loader.load_matrices(path):
                trials += tag(offset, triangularize_checks(m))
                offset += 1

        exhaustive_n = self.int_param("exhaustive_n", 2, minimum=0)
        if exhaustive_n:
            field = FieldSpec(self.int_param("exhaustive_p", 2, minimum=2))
            for m in enumerate_matrices(field, exhaustive_n):
                trials += tag(offset, triangularize_checks(m))
                offset += 1

        field = FieldSpec(self.int_param("p", 3, minimum=2))
        n = self.int_param("n", 3, minimum=1)

        def sample(i: int, rng) -> list[Trial]:
            return tag(offset + i, triangularize_checks(random_matrix(field, n, rng)))

        count = self.ctx.sample_count(200)
        logger.info(f"🔺 triangularize: {offset} fixed matrices, {count} seeded in M_{n}(F_{field.p})")
        for rows in await self.map_trials(sample, count):
            trials += rows

        non_split = sum(1 for _, row in trials if row.check == "non_split")
        logger.info(f"🔺 triangularize: {non_split} non-split characteristic polynomials")
        return self.checks_report(trials)

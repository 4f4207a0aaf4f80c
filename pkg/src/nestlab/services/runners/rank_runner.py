from nestlab.core.algebra.char_poly import char_poly_factor, determinant
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp, random_matrix
from nestlab.core.algebra.rank import rank_axiom_report, rref_rank
from nestlab.core.algebra.units import unit_from_polynomial_relation
from nestlab.core.lattice.laws import rank_matches_dimension
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


def matrix_checks(m: MatrixFp) -> list[CheckRow]:
    """Rank, invertibility and the characteristic polynomial of one matrix."""
    result = rref_rank(m)
    factorization = char_poly_factor(m)
    det = determinant(m)
    ctx = {"rank": result.rank, "rho": result.rho, "char_poly": str(factorization.char_poly)}
    rows = [
        CheckRow.leq("rho_at_most_one", result.rho, 1, **ctx),
        CheckRow.holds("full_rank_iff_unit", result.invertible == (det != 0), **ctx),
        CheckRow.holds(
            "cayley_hamilton", factorization.char_poly.evaluate_matrix(m).is_zero(), **ctx
        ),
        rank_matches_dimension(m),
    ]
    if det != 0:
        # chi(0) = (-1)^n det != 0, so chi itself inverts m
        b = unit_from_polynomial_relation(m, factorization.char_poly)
        rows.append(CheckRow.holds("inverse_from_char_poly", b @ m == m.one() and m @ b == m.one()))
    return rows


class RankRunner(ExperimentRunner):
    """
    Input matrices get their rank report; seeded quadruples (a, b, c, d)
    in M_n(F_p) exercise the rank-function and rank-metric laws.
    """

    command = "rank"

    async def run(self) -> ExperimentReport:
        p = self.int_param("p", 3, minimum=2)
        n = self.int_param("n", 4, minimum=1)
        field = FieldSpec(p)

        trials: list[Trial] = []
        offset = 0
        for path in self.ctx.inputs:
            for m in self.loader.load_matrices(path):
                trials += tag(offset, matrix_checks(m))
                offset += 1

        def sample(i: int, rng) -> list[Trial]:
            a, b, c, d = (random_matrix(field, n, rng) for _ in range(4))
            return tag(offset + i, rank_axiom_report(a, b, c, d) + matrix_checks(a))

        count = self.ctx.sample_count(100)
        logger.info(f"📐 rank: {count} seeded samples in M_{n}(F_{p})")
        for rows in await self.map_trials(sample, count):
            trials += rows
        return self.checks_report(trials)

from fractions import Fraction

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.nests.chains import Nest
from nestlab.core.nests.enumeration import (
    count_idempotents,
    enumerate_idempotents,
    enumerate_maximal_flags,
    enumerate_maximal_nests,
)
from nestlab.core.nests.nest_ops import (
    complete_to_maximal_nest,
    is_maximal,
    lambda_map,
    nest_from_flag,
    rank_order_isomorphism,
)
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


class NestRunner(ExperimentRunner):
    """
    Exhaustive nest/flag check in M_n(F_p): idempotent count, rho-values
    of maximal nests, Lambda onto the maximal flags, and the lifting
    round trip.
    """

    command = "nest"

    async def run(self) -> ExperimentReport:
        field = FieldSpec(self.int_param("p", 2, minimum=2))
        n = self.int_param("n", 2, minimum=1)
        logger.info(f"🪺 nest: exhaustive check in M_{n}(F_{field.p})")

        trials: list[Trial] = []
        idempotents = enumerate_idempotents(field, n)
        trials += tag(0, [CheckRow.eq("idempotent_count", len(idempotents), count_idempotents(field, n))])

        grid = [Fraction(k, n) for k in range(n + 1)]
        nests = list(enumerate_maximal_nests(field, n))
        flags = enumerate_maximal_flags(field, n)
        images = set()
        for t, nest in enumerate(nests, start=1):
            flag = lambda_map(nest)
            images.add(flag)
            trials += tag(
                t,
                [
                    CheckRow.holds("nest_maximal", is_maximal(nest)),
                    CheckRow.eq("nest_rho_values", [e.rho for e in nest.with_endpoints()], grid),
                    CheckRow.holds("rank_order_isomorphism", rank_order_isomorphism(nest)),
                    CheckRow.holds("lambda_maximal", is_maximal(flag)),
                ],
            )

        t = len(nests) + 1
        trials += tag(
            t,
            [
                CheckRow.eq("maximal_flags_hit", len(images), len(flags), nests=len(nests)),
                CheckRow.holds("lambda_onto_maximal_flags", images == set(flags)),
            ],
        )

        for flag in flags:
            t += 1
            lifted = nest_from_flag(flag)
            trials += tag(
                t,
                [
                    CheckRow.holds("lift_round_trip", lambda_map(lifted) == flag),
                    CheckRow.holds("lift_fixed_by_relift", nest_from_flag(lambda_map(lifted)) == lifted),
                ],
            )

        completed = complete_to_maximal_nest(Nest(field, n))
        trials += tag(
            t + 1,
            [
                CheckRow.holds("completion_maximal", is_maximal(completed)),
                CheckRow.eq("completion_length", len(completed.with_endpoints()), n + 1),
            ],
        )
        return self.checks_report(trials)

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import random_matrix
from nestlab.core.errors import ConfigurationError
from nestlab.core.lattice.enumeration import random_subspace
from nestlab.core.lattice.lattice_ops import join, join_meet, meet, perspectivity_witness, relative_complement
from nestlab.core.lattice.laws import all_pair_laws, rank_to_dimension_bound
from nestlab.core.nest_algebra.hull import hull_algebra, hull_checks, power_basis
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)

SUITES = ("laws", "hull")


class LatticeRunner(ExperimentRunner):
    """
    laws: seeded triples I, J, K of F_p^n against the modular-lattice and
    dimension-function laws, relative complements and perspectivity.
    hull: seeded (a, I, J) with S the algebra of powers of a, against the
    Gamma_S bounds.
    """

    command = "lattice"

    async def run(self) -> ExperimentReport:
        suites = self.list_param("suites", SUITES)
        unknown = set(suites) - set(SUITES)
        if unknown:
            raise ConfigurationError(f"unknown lattice suites {sorted(unknown)}")
        count = self.ctx.sample_count(100)
        trials: list[Trial] = []

        if "laws" in suites:
            field = FieldSpec(self.int_param("p", 2, minimum=2))
            n = self.int_param("n", 4, minimum=1)
            logger.info(f"🧮 lattice laws: {count} triples in F_{field.p}^{n}")

            def laws(i: int, rng) -> list[Trial]:
                a_, b_, c_ = (random_subspace(field, n, rng) for _ in range(3))
                a, b = random_matrix(field, n, rng), random_matrix(field, n, rng)
                rows = all_pair_laws(a_, b_, c_)
                rows.append(rank_to_dimension_bound(a, b, a_))
                lo, hi = meet(a_, b_), join(a_, c_)
                y = relative_complement(lo, a_, hi)
                jm = join_meet(a_, y)
                rows.append(CheckRow.holds("relative_complement", jm.meet == lo and jm.join == hi))
                z = perspectivity_witness(a_, b_)
                if z is None:
                    rows.append(CheckRow.holds("perspectivity_needs_equal_dim", a_.dim != b_.dim))
                else:
                    common = all(
                        join_meet(x, z).meet.dim == 0 and join_meet(x, z).join.dim == n for x in (a_, b_)
                    )
                    rows.append(CheckRow.holds("perspectivity_witness", common, dim=a_.dim))
                return tag(i, rows)

            for rows in await self.map_trials(laws, count, stream=0):
                trials += rows

        if "hull" in suites:
            field = FieldSpec(self.int_param("hull_p", 3, minimum=2))
            n = self.int_param("hull_n", 4, minimum=1)
            offset = count if "laws" in suites else 0
            logger.info(f"🧮 hull bounds: {count} samples in M_{n}(F_{field.p})")

            def hull(i: int, rng) -> list[Trial]:
                a = random_matrix(field, n, rng)
                algebra = hull_algebra(power_basis(a))
                s_i, s_j = random_subspace(field, n, rng), random_subspace(field, n, rng)
                rows = hull_checks(algebra, s_i, s_j)
                rows.append(CheckRow.leq("hull_algebra_dim", algebra.dim, n))
                return tag(offset + i, rows)

            for rows in await self.map_trials(hull, count, stream=1):
                trials += rows

        return self.checks_report(trials)

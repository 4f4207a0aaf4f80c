from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.nest_algebra.blocks import kernel_condition_holds, kernel_nilpotency, project_inject
from nestlab.core.nest_algebra.envelope import envelope, envelope_by_blocks
from nestlab.core.nest_algebra.folding import is_stable
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nest_algebra.stabilizer import ringrose_conditions, stabilizer_basis, unit_group_elements
from nestlab.core.nests.chains import IntervalPartition
from nestlab.core.nests.nest_ops import standard_nest
from nestlab.core.nilpotency.radical import levitzki_radical
from nestlab.core.nilpotency.subring_span import upper_triangular
from nestlab.core.nilpotency.unipotent import unipotent_group
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


class EnvelopeRunner(ExperimentRunner):
    """
    Envelope laws for the standard maximal nest of M_n(F_p), exhaustive
    over the cyclic subgroups of GL(R_E) and over conjugators in GL(R_E).
    Matrix groups given as inputs are enveloped as well.
    """

    command = "envelope"

    async def run(self) -> ExperimentReport:
        field = FieldSpec(self.int_param("p", 2, minimum=2))
        n = self.int_param("n", 3, minimum=1)
        nest = standard_nest(field, n)
        finest = IntervalPartition.finest(nest)
        coarse = IntervalPartition.trivial(nest)
        alg = stabilizer_basis(nest)
        units = unit_group_elements(alg)
        logger.info(f"🧱 envelope: {len(units)} units of R_E in M_{n}(F_{field.p})")

        trials: list[Trial] = []
        nil = kernel_nilpotency(finest)
        trials += tag(
            0,
            [
                CheckRow.eq("stabilizer_dim", alg.dim, n * (n + 1) // 2),
                CheckRow.eq("kernel_nilpotency_order", nil.order, n, kernel_dim=nil.kernel.dim),
            ],
        )

        def cyclic(u: MatrixFp) -> FiniteMatrixGroup:
            return FiniteMatrixGroup.from_generators([u], field, n)

        for t, u in enumerate(units, start=1):
            trials += tag(t, self._unit_checks(u, cyclic(u), units, nest, finest, coarse))

        t = len(units) + 1
        lev = unipotent_group(levitzki_radical(upper_triangular(field, n)).span)
        rows = [CheckRow.holds("levitzki_envelope_fixpoint", envelope(lev, finest).group == lev)]
        if n >= 3:
            one = MatrixFp.identity(field, n)
            x = one + MatrixFp.unit(field, n, 0, 1)
            y = one + MatrixFp.unit(field, n, 1, 2)
            env = envelope(FiniteMatrixGroup.trivial(field, n), finest).group
            rows.append(CheckRow.holds("envelope_non_abelian", x in env and y in env and x @ y != y @ x))
        trials += tag(t, rows)

        for path in self.ctx.inputs:
            t += 1
            g = self.loader.load_matrix_group(path)
            part = IntervalPartition.finest(standard_nest(g.field, g.n))
            result = envelope(g, part)
            trials += tag(
                t,
                [
                    CheckRow.eq("envelope_order", result.group.order, result.predicted_order, group=path),
                    CheckRow.holds("envelope_contains_group", g.is_subgroup_of(result.group), group=path),
                ],
            )
        return self.checks_report(trials)

    @staticmethod
    def _unit_checks(u, g, units, nest, finest, coarse) -> list[CheckRow]:
        result = envelope(g, finest)
        env = result.group
        ctx = {"generator": str(u.entries.tolist()), "order": g.order}
        projected = project_inject(u, finest)
        rows = [
            CheckRow.holds(
                "ringrose_equivalence",
                all(len(set(ringrose_conditions(u, e))) == 1 for e in nest.elements),
                **ctx,
            ),
            CheckRow.holds("kernel_of_projection", kernel_condition_holds(u - projected.reassembled, finest), **ctx),
            CheckRow.eq("envelope_order", env.order, result.predicted_order, **ctx),
            CheckRow.holds("envelope_by_blocks", envelope_by_blocks(units, g, finest) == env, **ctx),
            CheckRow.holds("envelope_contains_group", g.is_subgroup_of(env), **ctx),
            CheckRow.holds("envelope_monotone", envelope(g, coarse).group.is_subgroup_of(env), **ctx),
            CheckRow.holds("envelope_stable", is_stable(env, nest), **ctx),
        ]
        equivariant = all(
            envelope(g.conjugate(a), finest).group == env.conjugate(a) for a in units
        )
        rows.append(CheckRow.holds("envelope_conjugation", equivariant, conjugators=len(units), **ctx))
        return rows

from fractions import Fraction

from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.concentration.bridge import fold_bound_check, unitriangular_fold_length, unitriangular_group
from nestlab.core.errors import ConfigurationError
from nestlab.core.nest_algebra.folding import (
    folding_modulus,
    folding_semigroup,
    is_stable,
    psi_is_lipschitz,
    psi_is_multiplicative,
)
from nestlab.core.nests.nest_ops import standard_nest
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


def probe_elements(field: FieldSpec, n: int) -> list[MatrixFp]:
    """The elementary generators 1 + E_ij of UT(n) and the all-ones unitriangular matrix."""
    one = MatrixFp.identity(field, n)
    gens = [one + MatrixFp.unit(field, n, i, j) for i in range(n) for j in range(i + 1, n)]
    full = MatrixFp.from_rows(field, [[1 if j >= i else 0 for j in range(n)] for i in range(n)])
    return gens + [full]


class FoldRunner(ExperimentRunner):
    """
    Fold chains psi_{e_i}(UT(n, F_p)) along the standard maximal nest:
    the squared length against 16 / n, its strict decrease in n, and the
    folding maps themselves on a handful of unitriangular elements.
    """

    command = "fold"

    async def run(self) -> ExperimentReport:
        field = FieldSpec(self.int_param("p", 2, minimum=2))
        sizes = self.list_param("sizes", [2, 3, 4])
        if any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in sizes):
            raise ConfigurationError("params.sizes must list positive integers")

        trials: list[Trial] = []
        radicands: list[tuple[int, Fraction]] = []
        for t, n in enumerate(sizes):
            nest = standard_nest(field, n)
            group = unitriangular_group(field, n)
            _metric, length = unitriangular_fold_length(n, field.p)
            radicands.append((n, length.radicand))
            logger.info(f"🪗 fold: UT({n}, F_{field.p}) of order {group.order}, ell^2 = {length.radicand}")

            rows = [
                fold_bound_check(n, length),
                CheckRow.holds("unitriangular_stable", is_stable(group, nest), n=n),
            ]
            probes = probe_elements(field, n)
            for a in probes:
                rows += folding_modulus(a, nest) + folding_semigroup(a, nest)
            for a in probes:
                for b in probes:
                    for e in nest.elements:
                        rows += [psi_is_lipschitz(a, b, e), psi_is_multiplicative(a, b, e)]
            trials += tag(t, [row.with_context(n=n) for row in rows])

        ordered = sorted(radicands)
        for (n0, r0), (n1, r1) in zip(ordered, ordered[1:]):
            if n1 > n0:
                row = CheckRow.holds(
                    "fold_length_decreasing", r1 < r0, n=n1, ell_sq=str(r1), previous=f"{n0}:{r0}"
                )
                trials += tag(len(sizes), [row])
        return self.checks_report(trials)

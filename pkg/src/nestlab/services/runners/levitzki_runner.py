from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.errors import ConfigurationError
from nestlab.core.nilpotency.powers import geometric_inverse, nilpotency_order
from nestlab.core.nilpotency.radical import (
    MAX_MODULE_VECTORS,
    MAX_ORACLE_ELEMENTS,
    largest_nilpotent_ideal,
    levitzki_elementwise,
    levitzki_radical,
    radical_by_composition,
)
from nestlab.core.nilpotency.subring_span import SubringSpan, upper_triangular
from nestlab.core.nilpotency.unipotent import (
    commutator_depth_check,
    group_class,
    nilpotent_group_class,
    unipotent_group,
)
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)


def radical_checks(alg: SubringSpan, **ctx) -> tuple[SubringSpan, list[CheckRow]]:
    """Lev(A) against the oracles that fit: composition scan, then enumeration."""
    lev = levitzki_radical(alg)
    rows = [CheckRow.holds("radical_nilpotent", nilpotency_order(lev) is not None, dim=lev.dim, **ctx)]
    if alg.field.p**alg.n <= MAX_MODULE_VECTORS:
        rows.append(CheckRow.holds("radical_composition", radical_by_composition(alg) == lev.span, **ctx))
    if alg.span.size() <= MAX_ORACLE_ELEMENTS:
        rows += [
            CheckRow.holds("radical_elementwise", levitzki_elementwise(alg) == lev.span, **ctx),
            CheckRow.holds("radical_largest_ideal", largest_nilpotent_ideal(alg) == lev.span, **ctx),
        ]
    return lev, rows


def unipotent_checks(lev: SubringSpan, expected_class: int | None = None, **ctx) -> list[CheckRow]:
    """1 + Lev: class from the central series, its bound, and the power layers."""
    result = nilpotent_group_class(lev)
    brute = group_class(unipotent_group(lev.span))
    rows = [
        CheckRow.eq(
            "class_brute_force",
            result.nilpotency_class,
            brute,
            series=list(result.central_series),
            **ctx,
        )
    ]
    if expected_class is not None:
        rows.append(CheckRow.eq("unipotent_class", result.nilpotency_class, expected_class, **ctx))
    rows += [row.with_context(**ctx) for row in result.checks]
    depth = len(result.power_series_orders)
    for k in range(1, depth + 1):
        for l in range(1, depth + 1 - k):
            rows.append(commutator_depth_check(lev, k, l).with_context(**ctx))
    one = MatrixFp.identity(lev.field, lev.n)
    inverts = all(geometric_inverse(-a) @ (one + a) == one for a in lev.span.elements())
    rows.append(CheckRow.holds("geometric_inverse", inverts, **ctx))
    return rows


class LevitzkiRunner(ExperimentRunner):
    """
    Levitzki radicals of T_n(F_p) and of input spans, with the nilpotency
    class of 1 + Lev from the brute-force lower central series.
    """

    command = "levitzki"

    async def run(self) -> ExperimentReport:
        field = FieldSpec(self.int_param("p", 2, minimum=2))
        sizes = self.list_param("sizes", [2, 3])
        trials: list[Trial] = []

        for t, n in enumerate(sizes):
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ConfigurationError("params.sizes must list positive integers")
            lev, rows = radical_checks(upper_triangular(field, n, strict=False), n=n)
            strict = upper_triangular(field, n, strict=True)
            rows.append(CheckRow.holds("radical_strict_upper", lev.span == strict.span, n=n))
            rows += unipotent_checks(lev, expected_class=n - 1, n=n)
            logger.info(f"🧮 levitzki: Lev(T_{n}(F_{field.p})) has dim {lev.dim}")
            trials += tag(t, rows)

        t = len(sizes)
        for path in self.ctx.inputs:
            alg = self.loader.load_span(path)
            lev, rows = radical_checks(alg, span=path)
            rows += unipotent_checks(lev, span=path)
            trials += tag(t, rows)
            t += 1
        return self.checks_report(trials)

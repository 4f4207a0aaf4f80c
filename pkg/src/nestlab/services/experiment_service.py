from nestlab.core.experiment.experiment_context_builder import ExperimentContextBuilder
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.experiment_config import ExperimentConfig
from nestlab.models.exit_code import ExitCode
from nestlab.services.input_loader import InputLoader
from nestlab.services.report_writer import ReportWriter
from nestlab.services.runners.base_runner import ExperimentRunner
from nestlab.services.runners.chain_length_runner import ChainLengthRunner
from nestlab.services.runners.concentrate_runner import ConcentrateRunner
from nestlab.services.runners.envelope_runner import EnvelopeRunner
from nestlab.services.runners.fold_runner import FoldRunner
from nestlab.services.runners.lattice_runner import LatticeRunner
from nestlab.services.runners.levitzki_runner import LevitzkiRunner
from nestlab.services.runners.nest_runner import NestRunner
from nestlab.services.runners.rank_runner import RankRunner
from nestlab.services.runners.triangularize_runner import TriangularizeRunner

logger = LoggerManager.get_logger(__name__)

RUNNERS: dict[str, type[ExperimentRunner]] = {
    runner.command: runner
    for runner in (
        RankRunner,
        LatticeRunner,
        NestRunner,
        EnvelopeRunner,
        TriangularizeRunner,
        LevitzkiRunner,
        ChainLengthRunner,
        ConcentrateRunner,
        FoldRunner,
    )
}


class ExperimentService:
    """
    Runs one experiment end to end: context, runner, report.

    Returns the exit code for the report; invalid input and configuration
    errors propagate to the host.
    """

    def __init__(self, loader: InputLoader | None = None):
        self.loader = loader or InputLoader()
        logger.debug("Initializing ExperimentService")

    async def run(self, ctx: ExperimentConfig | None = None) -> ExitCode:
        ctx = ctx or ExperimentContextBuilder().build()
        runner = RUNNERS[ctx.command](ctx, self.loader)
        logger.info(f"🧪 Running '{ctx.command}' (seed={ctx.seed}, samples={ctx.samples})")

        report = await runner.run()
        ReportWriter(ctx.output).write(report, ctx.out)

        if report.violations:
            logger.warning(
                f"❌ {report.violations} of {len(report.rows)} rows violated: "
                f"{', '.join(report.failed_checks())}"
            )
            return ExitCode.VIOLATION

        logger.info(f"✅ All {len(report.rows)} rows hold")
        return ExitCode.OK

import asyncio

from nestlab.core.errors import ConfigurationError, InvalidInputError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.command_line_args import CommandLineArgs
from nestlab.models.exit_code import ExitCode
from nestlab.runtime.command_line import EXPERIMENT_COMMANDS
from nestlab.services.experiment_service import ExperimentService

logger = LoggerManager.get_logger(__name__)


class Host:
    """
    Host class to manage the execution of the main application.

    Dispatches the CLI subcommand and turns its outcome into an exit code.
    """

    def __init__(self, args: CommandLineArgs):
        self.args = args

    # -----------------------------------------------------
    def run(self) -> ExitCode:
        return asyncio.run(self.run_async())

    async def run_async(self) -> ExitCode:
        try:
            logger.info("🚀 Starting host operations.")

            if self.args.command == "run" or self.args.command in EXPERIMENT_COMMANDS:
                return await self.run_experiment()

            logger.error(f"❌ Unknown subcommand: {self.args.command}")
            return ExitCode.INVALID_INPUT

        except (InvalidInputError, ConfigurationError) as exc:
            logger.error(f"❌ {type(exc).__name__}: {exc}")
            return ExitCode.INVALID_INPUT

        finally:
            logger.info("✅ Shutting down host gracefully.")

    # -----------------------------------------------------
    async def run_experiment(self) -> ExitCode:
        service = ExperimentService()
        return await service.run()

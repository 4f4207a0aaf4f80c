import sys
from argparse import ArgumentParser

from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.exit_code import ExitCode


class LoggingArgumentParser(ArgumentParser):
    """
    ArgumentParser that logs errors instead of printing them, and exits
    with the invalid-input code. Help goes to stderr; stdout carries reports.
    """

    def error(self, message: str):
        logger = LoggerManager.get_logger(__name__)
        logger.error("Argument parsing error: {}", message)
        self.print_help(sys.stderr)
        raise SystemExit(ExitCode.INVALID_INPUT)

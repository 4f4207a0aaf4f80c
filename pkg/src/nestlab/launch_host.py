"""
Launch the asynchronous system.

This script initializes the application by parsing command-line arguments,
creating a Host instance, and launching its main logic asynchronously.
The process exit code is the host's: 0 all rows hold, 2 invalid input,
3 a violated row.
"""

import asyncio
import sys
from typing import Optional, Sequence

from nestlab.config.config import Config
from nestlab.core.errors import ConfigurationError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.exit_code import ExitCode
from nestlab.runtime.command_line import CommandLine

# Phase 1: bootstrap logging ASAP
LoggerManager.bootstrap()
log = LoggerManager.get_logger(__name__)

from nestlab.host import Host


async def launch_async(argv: Optional[Sequence[str]] = None) -> int:
    args = CommandLine.parse_arguments(argv)

    try:
        # -----------------------------
        # Load config
        # -----------------------------
        config = Config()
        if args.config:
            config.load_from_yaml(args.config)

        # Apply CLI overrides if any
        config.apply_cli_overrides(args)
    except (ConfigurationError, ValueError) as exc:
        log.error(f"❌ Invalid configuration: {exc}")
        return int(ExitCode.INVALID_INPUT)

    # -----------------------------
    # Phase 2: FINAL logging policy
    # -----------------------------
    LoggerManager.apply_config(config)
    if config.debug:
        config.print_config_info()

    log.info("🚀 Launching host with arguments")

    try:
        instance = Host(args)
        return int(await instance.run_async())
    except KeyboardInterrupt:
        log.info("Execution interrupted by user.")
        return 130


def launch():
    sys.exit(asyncio.run(launch_async()))


if __name__ == "__main__":
    launch()

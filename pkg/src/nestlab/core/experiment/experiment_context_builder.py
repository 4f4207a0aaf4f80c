from fractions import Fraction
from typing import Optional

from nestlab.config.config import Config
from nestlab.core.errors import ConfigurationError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.experiment_config import ExperimentConfig
from nestlab.runtime.command_line import EXPERIMENT_COMMANDS

logger = LoggerManager.get_logger(__name__)

# Commands drawing seeded samples unless experiment.samples is 0.
SAMPLED_COMMANDS = frozenset({"rank", "lattice", "triangularize", "chain-length", "concentrate"})

DEFAULT_EPSILONS = ("1/10", "1/4", "1/2")


def parse_epsilon(raw) -> Fraction:
    """A positive rational from "p/q", an int, or a decimal string (never a float)."""
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ConfigurationError(f"epsilon {raw!r} must be written as a rational string such as '1/4'")
    try:
        eps = Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"epsilon {raw!r} is not a rational number") from exc
    if eps <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {eps}")
    return eps


class ExperimentContextBuilder:
    """
    Builds an ExperimentConfig from Config.

    Assumes:
    - the YAML config (if any) and CLI overrides are already applied

    Owns:
    - schema validation of the experiment section
    - the seed requirement for sampled commands
    - input path resolution
    """

    def build(self) -> ExperimentConfig:
        config = Config()

        if config.config_path and not config.has_experiment_section:
            raise ConfigurationError(
                f"{config.config_path} has no 'experiment' section"
            )

        command: Optional[str] = config.command
        if command is None:
            raise ConfigurationError("no experiment command given (experiment.command)")
        if command not in EXPERIMENT_COMMANDS:
            raise ConfigurationError(
                f"unknown experiment command {command!r}; "
                f"expected one of {sorted(EXPERIMENT_COMMANDS)}"
            )

        raw_eps = config.epsilons or list(DEFAULT_EPSILONS)
        epsilons = tuple(parse_epsilon(e) for e in raw_eps)

        samples = config.samples
        sampled = command in SAMPLED_COMMANDS and samples != 0
        if sampled and config.seed is None:
            raise ConfigurationError(
                f"'{command}' draws random samples: experiment.seed (or --seed) is required"
            )

        inputs = tuple(config.resolve_input(p) for p in config.inputs)

        logger.debug(
            f"ExperimentConfig resolved: command={command}, seed={config.seed}, "
            f"samples={samples}, epsilons={[str(e) for e in epsilons]}, inputs={list(inputs)}"
        )

        return ExperimentConfig(
            command=command,
            inputs=inputs,
            epsilons=epsilons,
            samples=samples,
            seed=config.seed,
            output=config.output,
            out=config.out,
            params=config.params,
        )

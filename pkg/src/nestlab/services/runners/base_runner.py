import asyncio
from abc import ABC, abstractmethod
from typing import Callable, ClassVar, Iterable, Sequence, TypeVar

import numpy as np

from nestlab.core.errors import ConfigurationError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_config import ExperimentConfig
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.input_loader import InputLoader
from nestlab.utils.seeding import trial_generators

T = TypeVar("T")

logger = LoggerManager.get_logger(__name__)

Trial = tuple[int, CheckRow]


class ExperimentRunner(ABC):
    """
    One experiment kind.

    Subclasses implement `run`; sampled trials go through `map_trials`,
    which hands each trial its own generator and returns results in
    trial order whatever order the worker threads finish in.
    """

    command: ClassVar[str]

    def __init__(self, ctx: ExperimentConfig, loader: InputLoader | None = None):
        self.ctx = ctx
        self.loader = loader or InputLoader()

    @abstractmethod
    async def run(self) -> ExperimentReport: ...

    # ---------- helpers ----------

    def int_param(self, key: str, default: int, minimum: int = 0) -> int:
        value = self.ctx.param(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise ConfigurationError(f"params.{key} must be an integer >= {minimum}")
        return value

    def list_param(self, key: str, default: Sequence[T]) -> list[T]:
        value = self.ctx.param(key, list(default))
        if not isinstance(value, list) or not value:
            raise ConfigurationError(f"params.{key} must be a non-empty list")
        return value

    def choice_param(self, key: str, default: str, allowed: Iterable[str]) -> str:
        value = self.ctx.param(key, default)
        allowed = list(allowed)
        if value not in allowed:
            raise ConfigurationError(f"params.{key} must be one of {allowed}")
        return value

    async def map_trials(
        self, fn: Callable[[int, np.random.Generator], T], count: int, stream: int = 0
    ) -> list[T]:
        if count == 0:
            return []
        rngs = trial_generators(self.ctx.seed, count, stream)
        logger.debug(f"{self.command}: dispatching {count} trials (stream {stream})")
        return list(
            await asyncio.gather(*(asyncio.to_thread(fn, i, rng) for i, rng in enumerate(rngs)))
        )

    def checks_report(self, trials: Iterable[Trial]) -> ExperimentReport:
        return ExperimentReport.from_checks(self.command, trials)


def tag(trial: int, rows: Iterable[CheckRow]) -> list[Trial]:
    return [(trial, row) for row in rows]

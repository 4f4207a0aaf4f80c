import functools
import os
import sys
from typing import Any, Optional

import yaml
from dotenv import load_dotenv

from nestlab.core.errors import ConfigurationError
from nestlab.models.singleton import SingletonMeta
from nestlab.utils.arg_utils import was_explicit as _was_explicit
from nestlab.utils.env_utils import _parse_env_bool, _parse_env_int
from nestlab.utils.path_utils import get_project_root
from nestlab.utils.seeding import parse_seed

# stdout is reserved for reports
_note = functools.partial(print, file=sys.stderr)


class Config(metaclass=SingletonMeta):
    _is_initialized = False
    ALLOWED_OUTPUTS = ["csv", "json"]
    ALLOWED_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}

    def __init__(self):
        if Config._is_initialized:
            return

        load_dotenv()

        self._log_level = os.getenv("LOG_LEVEL", "INFO").upper()
        self._debug = _parse_env_bool("DEBUG", default=False)
        self._log_to_file = _parse_env_bool("LOG_TO_FILE", default=False)
        self.PROJECT_ROOT = get_project_root()

        # === Artifacts (auto-created if missing) ===
        base_dir_env = os.getenv("BASE_DIR", "artifacts")
        self.BASE_DIR = (
            base_dir_env
            if os.path.isabs(base_dir_env)
            else os.path.join(self.PROJECT_ROOT, base_dir_env)
        )

        self.LOG_DIR = os.path.join(self.BASE_DIR, "logs")

        self._config_path: Optional[str] = None
        self._has_experiment_section = False

        # === Experiment ===
        self._command: Optional[str] = None
        self._seed: Optional[int] = _parse_env_int("NESTLAB_SEED")
        self._output: str = "csv"
        self.output = os.getenv("NESTLAB_OUTPUT", "csv")
        self._out: Optional[str] = None
        self._epsilons: list[str] = []
        self._samples: Optional[int] = None
        self._inputs: list[str] = []
        self._params: dict[str, Any] = {}

        Config._is_initialized = True

    def apply_cli_overrides(self, args):
        if _was_explicit(args, "debug"):
            _note(f"[Config] Overriding 'debug' from CLI: {args.debug}")
            self.debug = args.debug

        if _was_explicit(args, "log_level"):
            _note(f"[Config] Overriding 'log_level' from CLI: {args.log_level}")
            self.log_level = args.log_level

        # --------------------------------------------
        # Experiment overrides
        # --------------------------------------------
        if args.command and args.command != "run":
            if self._command is not None and self._command != args.command:
                _note(f"[Config] Overriding experiment.command from CLI: {args.command}")
            self.command = args.command

        if _was_explicit(args, "seed"):
            _note(f"[Config] Overriding experiment.seed from CLI: {args.seed}")
            self.seed = args.seed

        if _was_explicit(args, "output"):
            _note(f"[Config] Overriding experiment.output from CLI: {args.output}")
            self.output = args.output

        if _was_explicit(args, "out"):
            _note(f"[Config] Overriding experiment.out from CLI: {args.out}")
            self.out = args.out

    def _load_experiment_section(self, data: dict) -> None:
        exp_cfg = data.get("experiment")

        if exp_cfg is None:
            return
        if not isinstance(exp_cfg, dict):
            raise ConfigurationError("'experiment' must be a mapping")

        self._has_experiment_section = True

        if "command" in exp_cfg:
            _note(
                f"[Config] Overriding 'experiment.command': "
                f"{self._command} → {exp_cfg['command']}"
            )
            self.command = exp_cfg["command"]

        if "seed" in exp_cfg:
            self.seed = exp_cfg["seed"]

        if "output" in exp_cfg:
            self.output = exp_cfg["output"]

        if "out" in exp_cfg:
            self.out = exp_cfg["out"]

        if "epsilons" in exp_cfg:
            self.epsilons = exp_cfg["epsilons"]

        if "samples" in exp_cfg:
            self.samples = exp_cfg["samples"]

        if "inputs" in exp_cfg:
            inputs = exp_cfg["inputs"] or []
            if not isinstance(inputs, list) or not all(isinstance(p, str) for p in inputs):
                raise ConfigurationError("experiment.inputs must be a list of paths")
            self._inputs = inputs

        if "params" in exp_cfg:
            params = exp_cfg["params"] or {}
            if not isinstance(params, dict):
                raise ConfigurationError("experiment.params must be a mapping")
            self._params = params

    def load_from_yaml(self, path: str):
        """
        Override config values from a YAML config file.

        Unlike optional settings files, an experiment config that is missing,
        unreadable or empty is an error: the run cannot be reproduced.
        """
        if not os.path.exists(path):
            raise ConfigurationError(f"config file not found: {path}")

        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from exc

        if not data:
            raise ConfigurationError(f"config file is empty: {path}")
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file must hold a mapping: {path}")

        self.config_path = path
        _note(f"[Config] Loaded YAML config: {path}")

        try:
            # --- Logging level (explicit policy) ---
            logging_cfg = data.get("logging") or {}
            if "level" in logging_cfg:
                self.log_level = logging_cfg["level"]
            if "to_file" in logging_cfg:
                self.log_to_file = logging_cfg["to_file"]

            # --- Debug flag (convenience) ---
            if "debug" in data:
                self.debug = data["debug"]

            self._load_experiment_section(data)
        except ValueError as exc:
            raise ConfigurationError(f"{path}: {exc}") from exc

    # --------------------------------------------
    # General
    # --------------------------------------------
    @property
    def config_path(self) -> Optional[str]:
        return self._config_path

    @config_path.setter
    def config_path(self, value):
        if not isinstance(value, str):
            raise ValueError("config_path must be a string.")
        self._config_path = value

    @property
    def has_experiment_section(self) -> bool:
        return self._has_experiment_section

    @property
    def debug(self):
        return self._debug

    @debug.setter
    def debug(self, value: bool):
        if not isinstance(value, bool):
            raise ValueError("debug must be a boolean")

        if self._debug != value:
            _note(f"[Config] Setting 'debug': {self._debug} → {value}")

        self._debug = value

        # Optional convenience behavior
        if value:
            self._log_level = "DEBUG"

    @property
    def log_level(self) -> str:
        return self._log_level

    @log_level.setter
    def log_level(self, value: str):
        if not isinstance(value, str):
            raise ValueError("log_level must be a string")

        value = value.upper()
        if value not in self.ALLOWED_LOG_LEVELS:
            raise ValueError(f"Invalid log level: {value}")

        if self._log_level != value:
            _note(f"[Config] Setting 'log_level': {self._log_level} → {value}")

        self._log_level = value

    @property
    def log_to_file(self) -> bool:
        return self._log_to_file

    @log_to_file.setter
    def log_to_file(self, value: bool):
        if not isinstance(value, bool):
            raise ValueError("logging.to_file must be a boolean")
        self._log_to_file = value

    # --------------------------------------------
    # Experiment
    # --------------------------------------------
    @property
    def command(self) -> Optional[str]:
        return self._command

    @command.setter
    def command(self, value: Optional[str]) -> None:
        """No validation here; the context builder owns the command set."""
        self._command = value

    @property
    def seed(self) -> Optional[int]:
        return self._seed

    @seed.setter
    def seed(self, value) -> None:
        if value is None:
            self._seed = None
            return
        seed = parse_seed(value)
        if self._seed != seed:
            _note(f"[Config] Setting 'experiment.seed': {self._seed} → {seed}")
        self._seed = seed

    @property
    def output(self) -> str:
        return self._output

    @output.setter
    def output(self, value: str) -> None:
        if value not in self.ALLOWED_OUTPUTS:
            raise ValueError(f"experiment.output must be one of {self.ALLOWED_OUTPUTS}")
        self._output = value

    @property
    def out(self) -> Optional[str]:
        return self._out

    @out.setter
    def out(self, value: Optional[str]) -> None:
        if value is not None and not isinstance(value, str):
            raise ValueError("experiment.out must be a path or null")
        self._out = value

    @property
    def epsilons(self) -> list[str]:
        """Rational strings such as "1/4"; parsed by the context builder."""
        return list(self._epsilons)

    @epsilons.setter
    def epsilons(self, value) -> None:
        if not isinstance(value, list):
            raise ValueError("experiment.epsilons must be a list")
        if any(isinstance(v, (bool, float)) for v in value):
            raise ValueError("experiment.epsilons must be exact: write '1/4', not 0.25")
        self._epsilons = [str(v) for v in value]

    @property
    def samples(self) -> Optional[int]:
        return self._samples

    @samples.setter
    def samples(self, value) -> None:
        if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
            raise ValueError("experiment.samples must be a non-negative integer")
        self._samples = value

    @property
    def inputs(self) -> list[str]:
        return list(self._inputs)

    @property
    def params(self) -> dict[str, Any]:
        return dict(self._params)

    def print_config_info(self):
        _note("=" * 50)
        _note("📂 Configuration")
        _note("-" * 50)
        _note(f"{'Configuration file:':25} {self.config_path}")
        _note(f"{'Base dir:':25} {self.BASE_DIR}")
        _note(f"{'Log level:':25} {self.log_level}")
        _note("-" * 50)
        _note("🧪 Experiment")
        _note("-" * 50)
        _note(f"{'Command:':25} {self.command}")
        _note(f"{'Seed:':25} {self.seed}")
        _note(f"{'Output:':25} {self.output} → {self.out or 'stdout'}")
        _note(f"{'Epsilons:':25} {self.epsilons}")
        _note(f"{'Samples:':25} {self.samples}")
        _note(f"{'Inputs:':25} {self.inputs}")
        _note(f"{'Params:':25} {self.params}")
        _note("=" * 50)

    def _resolve_path(self, val: Optional[str]) -> Optional[str]:
        if not val:
            return None
        if os.path.isabs(val):
            return val
        # Tier 0: as given, relative to the working directory
        if os.path.exists(val):
            return os.path.abspath(val)
        # Tier 1: try resolving relative to BASE_DIR
        base_resolved = os.path.join(self.BASE_DIR, val)
        if os.path.exists(base_resolved):
            _note(f"[Config] Resolved (BASE_DIR): {val} → {base_resolved}")
            return base_resolved
        # Tier 2: try resolving relative to PROJECT_ROOT
        root_resolved = os.path.join(self.PROJECT_ROOT, val)
        if os.path.exists(root_resolved):
            _note(f"[Config] Resolved (PROJECT_ROOT): {val} → {root_resolved}")
            return root_resolved
        # Fallback: assume BASE_DIR anyway
        fallback = base_resolved
        _note(f"[Config] Resolved (fallback to BASE_DIR): {val} → {fallback}")
        return fallback

    def resolve_input(self, val: str) -> str:
        return self._resolve_path(val)

    @classmethod
    def initialize(cls):
        if not cls._is_initialized:
            cls()

    @classmethod
    def is_initialized(cls):
        return cls._is_initialized

    @classmethod
    def reset(cls):
        cls._is_initialized = False
        cls.drop_instance()

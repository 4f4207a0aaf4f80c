from dataclasses import dataclass, field
from typing import Literal, Optional, Set


@dataclass
class CommandLineArgs:
    """
    Structured command-line arguments for the nestlab CLI.

    `command` is either "run" (experiment kind read from the config) or
    one of the experiment kinds itself.
    """

    # === Core CLI ===
    command: str  # e.g. "concentrate"
    config: Optional[str] = None  # Path to YAML config
    debug: bool = False  # Verbose logging
    log_level: Optional[str] = None

    # === Experiment overrides ===
    seed: Optional[int] = None  # Master seed (u64)
    output: Optional[Literal["csv", "json"]] = None
    out: Optional[str] = None  # Report path; stdout when absent

    # Internal: which args were explicitly passed
    _explicit_args: Set[str] = field(default_factory=set)

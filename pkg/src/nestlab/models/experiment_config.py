from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Resolved and validated experiment request.

    This represents a single, unambiguous run of one experiment kind.
    """

    command: str  # rank | lattice | nest | ... | fold
    inputs: tuple[str, ...] = ()  # resolved paths to JSON inputs
    epsilons: tuple[Fraction, ...] = ()
    samples: Optional[int] = None  # None: the runner's own default
    seed: Optional[int] = None
    output: str = "csv"  # csv | json
    out: Optional[str] = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def param(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def sample_count(self, default: int) -> int:
        return default if self.samples is None else self.samples

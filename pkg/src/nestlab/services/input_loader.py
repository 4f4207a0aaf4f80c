"""
JSON inputs referenced by experiment.inputs.

Formats:
- matrix: {"p", "n", "entries"}; a file may also hold a list of matrices
  or {"matrices": [...]}
- matrix group: {"p", "n", "elements" | "generators"}
- metric group: {"labels", "table", "metric" | "norm"}, optionally with
  "chain" (label lists or {"generators": ...})
- span: {"p", "n", "basis", "unital"}
"""

import json
from pathlib import Path
from typing import Any, Optional

from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.concentration.chains import SubgroupChain, chain_from_payload
from nestlab.core.concentration.metric_group import FiniteMetricGroup
from nestlab.core.errors import ConfigurationError
from nestlab.core.nest_algebra.matrix_group import FiniteMatrixGroup
from nestlab.core.nilpotency.subring_span import SubringSpan
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)


class InputLoader:
    def load_json(self, path: str) -> Any:
        try:
            with open(path, "r", encoding="utf-8") as f:
                payload = json.load(f)
        except FileNotFoundError as exc:
            raise ConfigurationError(f"input file not found: {path}") from exc
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read input {path}: {exc}") from exc
        logger.debug(f"Loaded input {Path(path).name}")
        return payload

    def load_matrices(self, path: str) -> list[MatrixFp]:
        payload = self.load_json(path)
        if isinstance(payload, dict) and "matrices" in payload:
            payload = payload["matrices"]
        items = payload if isinstance(payload, list) else [payload]
        if not items or not all(isinstance(m, dict) for m in items):
            raise ConfigurationError(f"{path}: expected matrix objects")
        return [MatrixFp.from_payload(m) for m in items]

    def load_metric_group(self, path: str) -> tuple[FiniteMetricGroup, Optional[SubgroupChain]]:
        payload = self.load_json(path)
        if not isinstance(payload, dict) or "table" not in payload:
            raise ConfigurationError(f"{path}: expected a metric group with a 'table'")
        group = FiniteMetricGroup.from_payload(payload)
        chain = chain_from_payload(group, payload["chain"]) if "chain" in payload else None
        return group, chain

    def load_matrix_group(self, path: str) -> FiniteMatrixGroup:
        payload = self.load_json(path)
        if not isinstance(payload, dict):
            raise ConfigurationError(f"{path}: expected a matrix group object")
        return FiniteMatrixGroup.from_payload(payload)

    def load_span(self, path: str) -> SubringSpan:
        payload = self.load_json(path)
        if not isinstance(payload, dict) or "basis" not in payload:
            raise ConfigurationError(f"{path}: expected a span with a 'basis'")
        return SubringSpan.from_payload(payload)

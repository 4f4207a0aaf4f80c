"""
CSV and JSON rendering of experiment reports.

Exact rationals are written as "p/q" strings (integers without "/1"),
floats with 15 significant digits, so equal inputs give equal bytes.
"""

import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.experiment_report import ExperimentReport
from nestlab.utils.path_utils import ensure_parent_exists

logger = LoggerManager.get_logger(__name__)


def format_scalar(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".15g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple)):
        return " ".join(format_scalar(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={format_scalar(v)}" for k, v in value.items())
    return str(value)


def to_json_value(value: Any) -> Any:
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), ".15g"))
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    return str(value)


class ReportWriter:
    def __init__(self, output: str = "csv"):
        if output not in ("csv", "json"):
            raise ValueError(f"unsupported report format: {output}")
        self.output = output

    def render(self, report: ExperimentReport) -> str:
        if self.output == "json":
            return self._render_json(report)
        return self._render_csv(report)

    def _render_csv(self, report: ExperimentReport) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([format_scalar(row.get(c)) for c in report.columns])
        return buf.getvalue()

    def _render_json(self, report: ExperimentReport) -> str:
        payload = {
            "command": report.command,
            "columns": list(report.columns),
            "rows": [{c: to_json_value(row.get(c)) for c in report.columns} for row in report.rows],
            "summary": {"rows": len(report.rows), "violations": report.violations},
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    def write(self, report: ExperimentReport, out: Optional[str] = None) -> None:
        text = self.render(report)
        if out is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        target = ensure_parent_exists(out, logger=logger)
        target.write_text(text, encoding="utf-8")
        logger.info(f"📝 Report written to {target}")

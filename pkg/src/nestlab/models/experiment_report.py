from dataclasses import dataclass
from typing import Any, Iterable

from nestlab.models.check_row import CheckRow

CHECK_COLUMNS = ("trial", "check", "lhs", "relation", "bound", "pass", "context")


@dataclass(frozen=True)
class ExperimentReport:
    """
    Rows of one experiment, already in canonical (trial) order.

    Every row carries a boolean "pass" entry; `violations` counts the rows
    where it is false.
    """

    command: str
    columns: tuple[str, ...]
    rows: tuple[dict[str, Any], ...]

    @classmethod
    def from_checks(cls, command: str, checks: Iterable[tuple[int, CheckRow]]) -> "ExperimentReport":
        rows = [
            {
                "trial": trial,
                "check": row.check,
                "lhs": row.lhs,
                "relation": row.relation,
                "bound": row.bound,
                "pass": row.passed,
                "context": row.context,
            }
            for trial, row in checks
        ]
        return cls(command, CHECK_COLUMNS, tuple(rows))

    @property
    def violations(self) -> int:
        return sum(1 for row in self.rows if not row["pass"])

    def failed_checks(self) -> list[str]:
        return sorted({str(row.get("check", self.command)) for row in self.rows if not row["pass"]})

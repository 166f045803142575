"""Inequality check reports: one record per verified inequality instance."""

from __future__ import annotations

import json
from dataclasses import dataclass


PASS_TOLERANCE = 1e-9  # proved inequalities: ratio <= 1 + tolerance or it's a bug


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking lhs <= rhs with a witness for the worst case."""

    name: str
    lhs: float
    rhs: float
    witness: str = ""
    tolerance: float = PASS_TOLERANCE

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return 0.0 if self.lhs == 0.0 else float("inf")
        return self.lhs / self.rhs

    @property
    def passed(self) -> bool:
        return self.ratio <= 1.0 + self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "worst_point": self.witness,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def summary_table(reports) -> str:
    """Markdown table over a list of reports."""
    lines = ["| name | lhs | rhs | ratio | pass |",
             "|------|-----|-----|-------|------|"]
    for r in reports:
        lines.append(f"| {r.name} | {r.lhs:.6g} | {r.rhs:.6g} | {r.ratio:.6g} | "
                     f"{'yes' if r.passed else 'NO'} |")
    return "\n".join(lines)

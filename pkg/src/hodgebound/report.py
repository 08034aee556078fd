"""Check records shared by the verification suites, the models module and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
STATUSES = (PASS, FAIL, NOT_APPLICABLE)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    inputs: dict[str, Any] = field(default_factory=dict)
    value: Any = None
    status: str = PASS
    residual: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "value": self.value,
            "status": self.status,
            "residual": self.residual,
        }


def check(name: str, residual: float, tol: float, inputs=None, value=None) -> CheckRecord:
    """Record that passes iff ``|residual| <= tol``."""
    residual = float(residual)
    status = PASS if abs(residual) <= tol else FAIL
    return CheckRecord(name, dict(inputs or {}), value, status, residual)


def inequality(name: str, lhs: float, rhs: float, tol: float, inputs=None) -> CheckRecord:
    """Record that passes iff ``lhs <= rhs + tol``; residual is ``lhs - rhs``."""
    gap = float(lhs) - float(rhs)
    status = PASS if gap <= tol else FAIL
    return CheckRecord(name, dict(inputs or {}), [float(lhs), float(rhs)], status, gap)


def summarize_records(records) -> dict[str, int]:
    counts = {s: 0 for s in STATUSES}
    for r in records:
        counts[r.status] += 1
    counts["total"] = len(records)
    return counts

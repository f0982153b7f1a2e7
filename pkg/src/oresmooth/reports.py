"""Structured results of the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    spec: str
    passed: bool
    bound: int | None = None
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "spec": self.spec,
            "bound": self.bound,
            "pass": self.passed,
            "counterexample": self.counterexample,
            "details": self.details,
        }

    def __bool__(self):
        return self.passed


def combine(name: str, spec: str, reports, bound=None) -> CheckReport:
    """Aggregate sub-reports; passes only if every part passes."""
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    return CheckReport(
        name=name,
        spec=spec,
        passed=not failed,
        bound=bound,
        counterexample=None if not failed else f"{failed[0].name}: {failed[0].counterexample}",
        details={"steps": [r.to_dict() for r in reports]},
    )

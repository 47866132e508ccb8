"""Check results and reports shared by lattice validation and verification."""

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckResult:
    """Result of applying one named check."""
    name: str
    passed: bool
    reason: str
    value: Optional[float] = None
    threshold: Optional[float] = None


@dataclass
class CheckReport:
    """Collection of check results for one subject (a lattice or a verification run)."""
    label: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def passed_count(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)


@dataclass
class DeviationTracker:
    """Running worst-case deviation for one quantity across a grid."""
    name: str
    threshold: float
    worst: float = 0.0
    where: str = ""
    count: int = 0

    def update(self, deviation: float, where: str) -> None:
        self.count += 1
        # NaN compares false, so it must be caught explicitly
        if deviation != deviation or deviation > self.worst:
            self.worst = float("inf") if deviation != deviation else deviation
            self.where = where

    def to_result(self) -> CheckResult:
        passed = self.count > 0 and self.worst <= self.threshold
        if self.count == 0:
            reason = "no grid points evaluated"
        else:
            reason = f"worst {self.worst:.3e} over {self.count} points ({self.where})"
        return CheckResult(self.name, passed, reason, value=self.worst, threshold=self.threshold)

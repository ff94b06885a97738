"""Named check results for state and measurement diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single named numerical check."""

    name: str
    passed: bool
    residual: float
    tolerance: float

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name:<14s} {status}  residual={self.residual:.3e}  tol={self.tolerance:.0e}"


@dataclass(frozen=True)
class ValidationReport:
    """A bundle of check results for one validated object."""

    subject: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __str__(self) -> str:
        lines = [f"{self.subject}:"]
        lines += [f"  {c}" for c in self.checks]
        return "\n".join(lines)

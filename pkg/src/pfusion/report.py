"""Structured, deterministic result records for property checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one executable check.

    A report with a failed hypothesis still carries its conclusion, but
    the conclusion is non-binding: only hypothesis-true instances can
    count as violations.
    """

    check_name: str
    inputs: list[str] = field(default_factory=list)
    hypothesis_held: bool = True
    conclusion_held: bool = True
    witnesses: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def is_violation(self) -> bool:
        return self.hypothesis_held and not self.conclusion_held

    @property
    def binding(self) -> bool:
        return self.hypothesis_held

    def to_dict(self, stable: bool = False) -> dict:
        return {
            "check": self.check_name,
            "inputs": list(self.inputs),
            "hypothesis": self.hypothesis_held,
            "conclusion": self.conclusion_held,
            "witnesses": list(self.witnesses),
            "elapsed_ms": 0 if stable else int(self.elapsed * 1000),
        }

    def summary(self) -> str:
        tag = "ok" if (self.conclusion_held or not self.hypothesis_held) else "VIOLATION"
        return (
            f"{self.check_name}: hypothesis={self.hypothesis_held} "
            f"conclusion={self.conclusion_held} [{tag}]"
        )

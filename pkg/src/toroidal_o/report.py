"""Verification reports shared by the checkers and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    suite: str
    checked: int = 0
    violations: list = field(default_factory=list)  # [(case, detail)]
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, case: str, detail: str) -> None:
        self.violations.append((str(case), str(detail)))

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "checked": self.checked,
            "violations": [{"case": c, "detail": d} for c, d in sorted(self.violations)],
        }

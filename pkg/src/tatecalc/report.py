"""Verification report records shared by the identity-checking operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    identity: str
    passed: bool
    first_defect: str | None = None
    note: str | None = None

    def to_json(self) -> dict:
        out: dict = {"identity": self.identity, "status": "pass" if self.passed else "fail"}
        if self.first_defect is not None:
            out["firstDefect"] = self.first_defect
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one verification operation at a fixed truncation order."""

    name: str
    order: int
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_defect(self) -> str | None:
        for c in self.checks:
            if not c.passed:
                return c.first_defect
        return None

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "order": self.order,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{self.name} (order {self.order}): {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            line = f"  [{mark}] {c.identity}"
            if c.first_defect and not c.passed:
                line += f" -- first defect: {c.first_defect}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
        return "\n".join(lines)

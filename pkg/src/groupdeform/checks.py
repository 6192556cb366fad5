"""Named pass/fail records shared by the verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.detail is not None:
            out["detail"] = self.detail if isinstance(self.detail, (int, float, list, dict)) else str(self.detail)
        return out


@dataclass
class CheckList:
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> list:
        return [c.to_json() for c in self.checks]

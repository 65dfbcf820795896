"""Check records and reports with deterministic serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    law: str
    group: str
    passed: bool
    counterexample: Any = None
    checked: int | None = None

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"law": self.law, "group": self.group, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.checked is not None:
            out["checked"] = self.checked
        return out


@dataclass
class Report:
    command: str = ""
    inputs: dict[str, str] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, law: str, group: str, passed: bool, counterexample: Any = None, checked: int | None = None) -> bool:
        self.checks.append(Check(law, group, bool(passed), None if passed else counterexample, checked))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.law, c.group, c.passed, c.counterexample, c.checked))
        for k, v in other.data.items():
            self.data[prefix + k] = v

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": dict(sorted(self.inputs.items())),
            "status": "pass" if self.ok else "fail",
            "checks": [c.as_dict() for c in self.checks],
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for name, digest in sorted(self.inputs.items()):
            lines.append(f"  input {name} sha256={digest[:16]}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f" ({c.checked} checked)" if c.checked is not None else ""
            lines.append(f"  [{mark}] {c.group}: {c.law}{extra}")
            if not c.passed and c.counterexample is not None:
                lines.append(f"         counterexample: {json.dumps(c.counterexample, sort_keys=True)}")
        for k, v in sorted(self.data.items()):
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        return "\n".join(lines) + "\n"

"""Verification reports shared by the symbolic and modular-form suites."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckResult:
    label: str
    anchor: str
    order: str
    passed: bool
    discrepancy: Optional[str] = None
    constants: Dict[str, str] = field(default_factory=dict)


@dataclass
class VerifyReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, label: str, passed: bool, *, anchor: str = "", order: str = "",
            discrepancy: Optional[str] = None, **constants: Any) -> CheckResult:
        res = CheckResult(label, anchor, order, bool(passed),
                          None if passed else (discrepancy or "mismatch"),
                          {k: str(v) for k, v in constants.items()})
        self.checks.append(res)
        return res

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: "VerifyReport") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def constant(self, key: str) -> Optional[str]:
        for c in self.checks:
            if key in c.constants:
                return c.constants[key]
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks], "notes": list(self.notes)}

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifyReport":
        rep = cls(data["suite"], notes=list(data.get("notes", [])))
        for c in data["checks"]:
            rep.checks.append(CheckResult(**c))
        return rep

    def render(self) -> str:
        lines = [f"== {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f" [{c.order}]" if c.order else ""
            line = f"  {mark} {c.label}{extra}"
            if c.constants:
                line += "  (" + ", ".join(f"{k}={v}" for k, v in c.constants.items()) + ")"
            lines.append(line)
            if c.discrepancy:
                lines.append(f"       -> {c.discrepancy}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

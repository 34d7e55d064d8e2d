"""Pass/fail records for verification runs and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["CheckResult", "Report", "REPORT_SCHEMA"]

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["pass", "results"],
    "additionalProperties": False,
    "properties": {
        "pass": {"type": "boolean"},
        "summary": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["passed", "failed"],
                "properties": {
                    "passed": {"type": "integer", "minimum": 0},
                    "failed": {"type": "integer", "minimum": 0},
                },
            },
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "instance", "pass"],
                "additionalProperties": False,
                "properties": {
                    "check": {"type": "string"},
                    "instance": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "counterexample": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class CheckResult:
    check: str
    instance: str
    passed: bool
    counterexample: str | None = None

    def to_dict(self) -> dict:
        out = {"check": self.check, "instance": self.instance, "pass": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, instance: str, passed: bool, counterexample: str | None = None):
        self.results.append(CheckResult(check, instance, bool(passed), counterexample))

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            s = out.setdefault(r.check, {"passed": 0, "failed": 0})
            s["passed" if r.passed else "failed"] += 1
        return out

    def to_dict(self, verbose: bool = True) -> dict:
        results = self.results if verbose else self.failures()
        return {
            "pass": self.passed,
            "summary": self.summary(),
            "results": [r.to_dict() for r in results],
        }

    def to_json(self, verbose: bool = True) -> str:
        return json.dumps(self.to_dict(verbose), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = []
        for check, s in self.summary().items():
            status = "pass" if not s["failed"] else "FAIL"
            lines.append(f"{status}: {check} ({s['passed']} passed, {s['failed']} failed)")
        for r in self.failures()[:20]:
            lines.append(f"  counterexample [{r.check}] {r.instance}: {r.counterexample}")
        lines.append("overall: " + ("pass" if self.passed else "FAIL"))
        return "\n".join(lines)

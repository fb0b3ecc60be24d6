"""Verification report records (JSON/CSV serializable)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["VerificationReport", "reports_to_json", "reports_to_csv"]


def _plain(value):
    """Coerce numpy scalars/arrays into JSON-friendly builtins."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


@dataclass
class VerificationReport:
    """One named check: inputs, measured statistics, tolerances, verdict.

    ``passed`` is a pure function of ``statistics`` and ``tolerances``; the
    check functions set it at construction and never mutate it afterwards.
    """

    name: str
    parameters: dict = field(default_factory=dict)
    statistics: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    passed: bool = False
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": _plain(self.parameters),
            "statistics": _plain(self.statistics),
            "tolerances": _plain(self.tolerances),
            "passed": bool(self.passed),
            "seed": self.seed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            name=data["name"],
            parameters=data.get("parameters", {}),
            statistics=data.get("statistics", {}),
            tolerances=data.get("tolerances", {}),
            passed=bool(data.get("passed", False)),
            seed=data.get("seed"),
        )

    def summary_line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}"


def reports_to_json(reports, manifest: dict | None = None) -> str:
    payload: dict = {"reports": [r.to_dict() for r in reports]}
    if manifest is not None:
        payload["manifest"] = _plain(manifest)
    return json.dumps(payload, indent=2, sort_keys=True)


def reports_to_csv(reports) -> str:
    """Compact summary table: one row per report."""
    lines = ["name,passed,detail"]
    for r in reports:
        detail = ";".join(f"{k}={_plain(v)}" for k, v in sorted(r.statistics.items()))
        detail = detail.replace(",", ";")
        lines.append(f"{r.name},{int(r.passed)},{detail}")
    return "\n".join(lines) + "\n"

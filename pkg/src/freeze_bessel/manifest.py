"""Run manifests and file serialization for sample batches and reports.

Every output file starts with (or embeds) a RunManifest recording the
command, its full parameter map, the seed, the tool version, and a
timestamp.  CSV files carry it as a first line ``# manifest: <json>``
followed by one ``x1,...,xN`` row per sample; JSON files mirror the same
structure field for field.  Replaying a manifest re-runs the command with
the recorded parameters, reproducing the data section byte for byte.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._version import __version__
from .report import VerificationReport
from .sampling import SampleBatch

__all__ = [
    "MANIFEST_PREFIX",
    "RunManifest",
    "batch_csv_text",
    "batch_json_text",
    "reports_json_text",
    "write_text",
    "read_run_file",
    "data_section",
]

MANIFEST_PREFIX = "# manifest: "


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _json_safe(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record embedded in every output file."""

    command: str
    parameters: dict
    seed: int | None
    version: str = __version__
    timestamp: str = field(default_factory=_utc_now)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": _json_safe(self.parameters),
            "seed": self.seed,
            "version": self.version,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        return cls(
            command=d["command"],
            parameters=dict(d.get("parameters", {})),
            seed=d.get("seed"),
            version=d.get("version", __version__),
            timestamp=d.get("timestamp", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# writers


def _format_row(row: np.ndarray) -> str:
    return ",".join(repr(float(v)) for v in row)


def batch_csv_text(batch: SampleBatch, manifest: RunManifest) -> str:
    header = ",".join(f"x{i + 1}" for i in range(batch.points.shape[1]))
    lines = [MANIFEST_PREFIX + manifest.to_json(), header]
    lines.extend(_format_row(row) for row in batch.points)
    return "\n".join(lines) + "\n"


def _batch_dict(batch: SampleBatch) -> dict:
    return {
        "spec": batch.spec.to_dict(),
        "t": batch.t,
        "method": batch.method.value,
        "seed": batch.seed,
        "diagnostics": batch.diagnostics.to_dict(),
        "points": batch.points.tolist(),
    }


def batch_json_text(batch: SampleBatch, manifest: RunManifest) -> str:
    payload = {"manifest": manifest.to_dict(), "batch": _batch_dict(batch)}
    return json.dumps(payload, indent=2) + "\n"


def reports_json_text(reports: list[VerificationReport], manifest: RunManifest) -> str:
    payload = {
        "manifest": manifest.to_dict(),
        "reports": [r.to_dict() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    return json.dumps(payload, indent=2) + "\n"


def reports_csv_text(reports: list[VerificationReport], manifest: RunManifest) -> str:
    lines = [MANIFEST_PREFIX + manifest.to_json(), "name,passed,detail"]
    for r in reports:
        detail = "; ".join(f"{k}={v}" for k, v in r.statistics.items())
        detail = detail.replace(",", ";")
        lines.append(f"{r.name},{str(r.passed).lower()},{detail}")
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def data_section(text: str) -> str:
    """Everything after the manifest line: the part that must be byte-stable."""
    lines = text.splitlines(keepends=True)
    if lines and lines[0].startswith(MANIFEST_PREFIX):
        return "".join(lines[1:])
    return text


# ---------------------------------------------------------------------------
# readers


def read_run_file(path) -> dict:
    """Parse any output file; returns {"manifest": RunManifest, "kind": ..., ...}.

    Kinds: "batch-csv" (adds "points"), "batch-json" (adds "batch" dict and
    "points"), "reports-json" (adds "reports" list of dicts), "manifest-json"
    (a bare manifest).
    """
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        if "batch" in obj:
            return {
                "manifest": RunManifest.from_dict(obj["manifest"]),
                "kind": "batch-json",
                "batch": obj["batch"],
                "points": np.asarray(obj["batch"]["points"], dtype=float),
            }
        if "reports" in obj:
            return {
                "manifest": RunManifest.from_dict(obj["manifest"]),
                "kind": "reports-json",
                "reports": obj["reports"],
            }
        if "command" in obj:
            return {"manifest": RunManifest.from_dict(obj), "kind": "manifest-json"}
        if "manifest" in obj:
            return {"manifest": RunManifest.from_dict(obj["manifest"]), "kind": "manifest-json"}
        raise ValueError(f"{path}: unrecognized JSON layout")
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MANIFEST_PREFIX):
        raise ValueError(f"{path}: missing '{MANIFEST_PREFIX.strip()}' header line")
    manifest = RunManifest.from_json(lines[0][len(MANIFEST_PREFIX):])
    body = [ln for ln in lines[1:] if ln.strip()]
    points = None
    if body:
        start = 1 if body[0].lstrip().startswith("x1") or body[0].lstrip().startswith("name") else 0
        rows = body[start:]
        if rows and not rows[0].startswith("name"):
            try:
                points = np.array([[float(v) for v in ln.split(",")] for ln in rows])
            except ValueError:
                points = None
    return {"manifest": manifest, "kind": "batch-csv", "points": points}

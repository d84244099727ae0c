"""Run reports: one structured record per CLI invocation, rendered either
as JSON (stable, versioned schema) or as text carrying the same data."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

from .resolutions import BettiTable

__all__ = ["Report", "emit_report", "validate_report", "SCHEMA_VERSION",
           "betti_entries", "load_schema"]

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    inputs_digest: str = ""
    seed: object = None
    timing_seconds: float = 0.0
    results: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "seed": self.seed,
            "timing_seconds": round(self.timing_seconds, 6),
            "results": self.results,
        }


def digest_inputs(*chunks) -> str:
    h = hashlib.sha256()
    for c in chunks:
        if isinstance(c, bytes):
            h.update(c)
        else:
            h.update(str(c).encode("utf-8"))
        h.update(b"\x00")
    return "sha256:" + h.hexdigest()


def betti_entries(table: BettiTable) -> list:
    return [{"i": i, "j": j, "b": b}
            for (i, j), b in sorted(table.items())]


def _render_value(key, value, indent="  "):
    if key == "betti" and isinstance(value, list):
        entries = {(e["i"], e["j"]): e["b"] for e in value}
        grid = BettiTable(entries).render()
        lines = [f"{indent}betti:"]
        lines += [indent + "  " + ln for ln in grid.splitlines()]
        return lines
    if isinstance(value, list) and value and isinstance(value[0], dict):
        lines = [f"{indent}{key}:"]
        for k, item in enumerate(value):
            lines.append(f"{indent}  [{k}] " + ", ".join(
                f"{a}={b}" for a, b in item.items()))
        return lines
    if isinstance(value, dict):
        lines = [f"{indent}{key}:"]
        for a, b in value.items():
            lines.extend(_render_value(str(a), b, indent + "  "))
        return lines
    return [f"{indent}{key}: {value}"]


def emit_report(report: Report, format: str = "text") -> str:
    """Render a report; the structured form is JSON against the shipped
    schema, the text form lists exactly the same fields."""
    obj = report.to_json_obj()
    if format in ("structured", "json"):
        return json.dumps(obj, indent=2, sort_keys=True)
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = [f"command: {obj['command']}",
             f"inputs:  {obj['inputs_digest']}",
             f"seed:    {obj['seed']}",
             f"time:    {obj['timing_seconds']:.3f}s",
             "results:"]
    for key, value in obj["results"].items():
        lines.extend(_render_value(key, value))
    return "\n".join(lines)


def load_schema() -> dict:
    data = resources.files("liaison").joinpath("report_schema.json").read_text()
    return json.loads(data)


def validate_report(obj) -> None:
    """Raise jsonschema.ValidationError when obj violates the schema."""
    import jsonschema
    jsonschema.validate(obj, load_schema())

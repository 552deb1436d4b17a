"""Experiment configuration and deterministic reports.

A Report serializes to JSON as {config, summary, records, version} and to
CSV as the flat record table.  Identical configs must yield byte-identical
report files, so nothing time- or environment-dependent is written: wall
time is kept on the Report object but serialized as null unless explicitly
requested.  Chart coordinates appear as decimal strings with an "inf" token
for the infinitely remote point; any non-finite float is serialized as a
string token for strict-JSON safety.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import ConfigError

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ExperimentConfig:
    """Configuration of one suite run; fixed seed implies identical reports."""

    structure: str = "canonical"
    suite: str = "axioms"
    samples: int = 1000
    seed: int = 0
    alpha: float = 1.0 - 1e-6
    epsilon: float = 1.0 / 32.0
    tol: float | None = None          # override of the suite's pass tolerance
    min_gap: float = 1e-2
    budget: int = 0                   # refinement budget for distance bounds
    chart_omega: float | None = None  # chart used for record coordinates
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown report format {self.fmt!r}")

    def asdict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class Report:
    """Result of one suite run."""

    config: dict[str, Any]
    summary: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)
    version: str = SCHEMA_VERSION
    passed: bool = True
    runtime_seconds: float | None = None  # excluded from bytes unless requested

    def to_json(self, *, include_runtime: bool = False) -> str:
        payload = {
            "config": self.config,
            "summary": dict(self.summary, passed=self.passed),
            "records": self.records,
            "version": self.version,
            "runtime_seconds": self.runtime_seconds if include_runtime else None,
        }
        return json.dumps(_sanitize(payload), sort_keys=True, separators=(",", ":")) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        keys = sorted({k for rec in self.records for k in rec})
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for rec in self.records:
            writer.writerow([_csv_cell(rec.get(k)) for k in keys])
        return buf.getvalue()

    def serialize(self, fmt: str = "json", *, include_runtime: bool = False) -> str:
        if fmt == "json":
            return self.to_json(include_runtime=include_runtime)
        if fmt == "csv":
            return self.to_csv()
        raise ConfigError(f"unknown report format {fmt!r}")

    def write(self, path: str, fmt: str = "json", *,
              include_runtime: bool = False) -> None:
        with open(path, "w") as fh:
            fh.write(self.serialize(fmt, include_runtime=include_runtime))


def format_chart_value(value: float) -> str:
    """Decimal-string form of a chart coordinate; "inf" marks the remote point."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _sanitize(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return format_chart_value(obj) if not math.isnan(obj) else "nan"
    return obj


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_chart_value(value) if not math.isnan(value) else "nan"
    return str(value)

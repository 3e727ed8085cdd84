"""Residual summaries for verified identities, and their JSON form."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = "harmlab-report/1"

_CHECK_SCHEMA = {
    "type": "object",
    "required": ["name", "grid", "step", "max_residual", "tolerance", "worst_point", "pass"],
    "properties": {
        "name": {"type": "string"},
        "grid": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["r_max", "n_radial", "n_angular", "exclusion_centers", "exclusion_radius"],
                },
            ]
        },
        "step": {"type": ["number", "null"]},
        "max_residual": {"type": ["number", "string"]},
        "tolerance": {"type": "number"},
        "worst_point": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
            ]
        },
        "pass": {"type": "boolean"},
        "reason": {"type": "string"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "suite_name", "checks", "pass"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "suite_name": {"type": "string"},
        "timestamp": {"type": "string"},
        "pass": {"type": "boolean"},
        "checks": {"type": "array", "items": _CHECK_SCHEMA},
        "extras": {"type": "object"},
    },
}


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float
    worst_point: complex | None = None
    grid: dict | None = None
    step: float | None = None
    reason: str | None = None

    @property
    def passed(self) -> bool:
        if self.reason is not None or math.isnan(self.max_residual):
            return False
        return bool(self.max_residual <= self.tolerance)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "grid": self.grid,
            "step": self.step,
            "max_residual": _num(self.max_residual),
            "tolerance": float(self.tolerance),
            "worst_point": None if self.worst_point is None
            else [float(self.worst_point.real), float(self.worst_point.imag)],
            "pass": self.passed,
        }
        if self.reason is not None:
            d["reason"] = self.reason
        return d


def _num(x):
    # JSON has no inf/nan; keep the report parseable by strict readers.
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


@dataclass
class CheckReport:
    suite_name: str
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(all(c.passed for c in self.checks))

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "CheckReport", prefix: str = ""):
        for c in other.checks:
            if prefix:
                c.name = f"{prefix}{c.name}"
            self.checks.append(c)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self, timestamp: str | None = None) -> dict:
        d = {"version": SCHEMA_VERSION, "suite_name": self.suite_name}
        if timestamp is not None:
            d["timestamp"] = timestamp
        d["pass"] = self.passed
        d["checks"] = [c.to_dict() for c in self.checks]
        if self.extras:
            d["extras"] = self.extras
        return d

    def to_json(self, timestamp: str | None = None) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2)

    def summary_lines(self):
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            extra = f"  ({c.reason})" if c.reason else ""
            yield f"{flag}  {c.name:<40s} max={c.max_residual:.3e}  tol={c.tolerance:.1e}{extra}"


def validate_report(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` is not a valid report."""
    import jsonschema

    jsonschema.validate(doc, REPORT_SCHEMA)


def worst_index(points, residuals) -> int:
    """Index of the largest residual; ties go to the smallest ``(x, y)``.

    NaN residuals rank above everything else.
    """
    res = np.where(np.isnan(residuals), np.inf, np.asarray(residuals, dtype=float))
    top = res.max()
    cand = np.flatnonzero(res == top)
    if cand.size == 1:
        return int(cand[0])
    pts = np.asarray(points)[cand]
    order = np.lexsort((pts.imag, pts.real))
    return int(cand[order[0]])


def residual_check(name, points, residuals, tolerance, grid=None, step=None) -> Check:
    points = np.asarray(points, dtype=complex).reshape(-1)
    residuals = np.asarray(residuals, dtype=float).reshape(-1)
    if residuals.size == 0:
        return Check(name, 0.0, tolerance, None, grid, step)
    k = worst_index(points, residuals)
    worst = float(np.inf if np.isnan(residuals[k]) else residuals[k])
    if np.isnan(residuals).any():
        worst = float("nan")
    return Check(name, worst, tolerance, complex(points[k]), grid, step)


def failed_check(name, reason, tolerance=0.0, grid=None, step=None) -> Check:
    return Check(name, float("inf"), tolerance, None, grid, step, reason=reason)

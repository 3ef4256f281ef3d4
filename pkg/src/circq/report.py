"""Verification entries and deterministic JSON serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Entry", "RunReport", "dumps", "from_theorem"]


@dataclass
class Entry:
    suite: str
    check: str
    point_index: int | None
    value: float
    tol: float | None
    passed: bool
    detail: dict = field(default_factory=dict)
    informational: bool = False

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "detail": self.detail,
            "informational": self.informational,
            "pass": self.passed,
            "point_index": self.point_index,
            "suite": self.suite,
            "tol": self.tol,
            "value": self.value,
        }

    def line(self) -> str:
        where = "global" if self.point_index is None else f"point {self.point_index}"
        if self.informational:
            status = "INFO"
        else:
            status = "PASS" if self.passed else "FAIL"
        tol = "" if self.tol is None else f" (tol {self.tol:.1e})"
        msg = self.detail.get("message")
        text = msg if msg else f"{self.check} = {self.value:.3e}{tol}"
        return f"[{self.suite}] {where}: {status} {text}"


def from_theorem(suite: str, point_index, report, informational=False) -> Entry:
    detail = {"lhs": report.lhs, "rhs": report.rhs, "inputs": report.inputs,
              "extras": report.extras}
    return Entry(suite, report.theorem, point_index, report.residual, report.tol,
                 report.passed, detail, informational)


@dataclass
class RunReport:
    config: dict
    entries: list
    versions: dict
    wall_clock_seconds: float = 0.0

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries if not e.informational)

    def as_dict(self) -> dict:
        suites: dict[str, list] = {}
        for e in self.entries:
            suites.setdefault(e.suite, []).append(e.as_dict())
        return {
            "config": self.config,
            "overall_pass": self.overall_pass,
            "suites": suites,
            "versions": self.versions,
            "wall_clock_seconds": self.wall_clock_seconds,
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def _float17(x: float) -> str:
    return format(x, ".17g") if math.isfinite(x) else "null"


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(obj[k], indent, level + 1)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, float):
        return _float17(obj)
    return json.dumps(obj)


def dumps(obj, indent: int = 2) -> str:
    """JSON with alphabetically sorted keys and 17 significant digits per float."""
    return _encode(_plain(obj), indent, 0) + "\n"

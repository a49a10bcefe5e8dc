"""Verification reports: one record per check, exact integers as strings."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

SCHEMA_VERSION = "1"


def exact(obj: Any) -> Any:
    """Recursively turn ints into decimal strings so no consumer rounds them."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [exact(v) for v in obj]
    return str(obj)


@dataclass
class Check:
    name: str
    status: str
    expected: Any
    actual: Any
    elapsed_ms: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "expected": exact(self.expected),
            "actual": exact(self.actual),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass
class VerificationReport:
    n: int
    seed: int = 0
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def run(self, name: str, expected: Any, compute: Callable[[], Any], compare=None) -> Check:
        t0 = time.perf_counter()
        try:
            actual = compute()
            ok = compare(expected, actual) if compare else actual == expected
        except Exception as exc:  # a crashing check is a failing check
            actual, ok = f"error: {type(exc).__name__}: {exc}", False
        check = Check(name, "pass" if ok else "fail", expected, actual, (time.perf_counter() - t0) * 1e3)
        self.checks.append(check)
        return check

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, "skipped", None, reason, 0.0))

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "status": "pass" if self.passed else "fail",
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def load_schema() -> dict[str, Any]:
    text = resources.files("cyclotope").joinpath("schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)

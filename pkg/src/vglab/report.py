"""Structured outcomes of law checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(obj: Any) -> Any:
    """Convert witnesses (fractions, tuples, infinity, grid points) to JSON values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(v) for v in obj), key=repr)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


@dataclass
class LawReport:
    """Result of running one family of checks.

    ``witness`` is the first failing instance; ``evidence`` holds whatever the
    check wants to expose when it passes (counts, computed values).
    """

    suite: str
    claim: str = ""
    attempted: int = 0
    passed: int = 0
    witness: Any = None
    failures: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    duration: float = 0.0

    max_failures = 20

    @property
    def ok(self) -> bool:
        return self.passed == self.attempted and self.witness is None

    def record(self, ok: bool, witness: Any = None) -> bool:
        self.attempted += 1
        if ok:
            self.passed += 1
        else:
            if self.witness is None:
                self.witness = witness
            if len(self.failures) < self.max_failures:
                self.failures.append(witness)
        return ok

    def merge(self, other: LawReport) -> None:
        self.attempted += other.attempted
        self.passed += other.passed
        if self.witness is None and other.witness is not None:
            self.witness = other.witness
        room = self.max_failures - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])

    def failed_laws(self) -> set:
        return {f["law"] for f in self.failures if isinstance(f, dict) and "law" in f}

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "claim": self.claim,
            "ok": self.ok,
            "attempted": self.attempted,
            "passed": self.passed,
            "witness": jsonable(self.witness),
            "evidence": jsonable(self.evidence),
        }
        if timing:
            out["duration"] = round(self.duration, 6)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


@dataclass(frozen=True)
class Verdict:
    """A boolean with the first counterexample attached."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)

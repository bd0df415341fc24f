"""Structured verdicts shared by the verifiers and the CLI."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    not_applicable: str | None = None
    seed: int | None = None
    elapsed: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, passed: bool, detail: str = "", witness=None) -> Check:
        c = Check(name, bool(passed), detail, witness)
        self.checks.append(c)
        return c

    def note(self, text: str) -> None:
        self.notes.append(text)

    def finish(self) -> "Report":
        self.elapsed = time.perf_counter() - self._t0
        return self

    @property
    def verdict(self) -> str:
        if self.not_applicable is not None or not self.checks:
            return NOT_APPLICABLE
        return PASS if all(c.passed for c in self.checks) else FAIL

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
            "notes": list(self.notes),
            "timing_seconds": round(self.elapsed, 4),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.not_applicable is not None:
            out["reason"] = self.not_applicable
        if self.data:
            out["data"] = jsonable(self.data)
        return out

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict.upper()}"]
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        if self.not_applicable is not None:
            lines.append(f"  reason: {self.not_applicable}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness is not None and not c.passed:
                lines.append(f"         witness: {jsonable(c.witness)}")
        for k, v in self.data.items():
            lines.append(f"  {k}: {jsonable(v)}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  time: {self.elapsed:.3f}s")
        return "\n".join(lines)


def jsonable(x):
    """Convert exact values to JSON-safe structures; rationals become strings."""
    from .exact import Polynomial, RationalFunction

    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Polynomial):
        return [str(c) for c in x.coeffs]
    if isinstance(x, RationalFunction):
        return {"num": jsonable(x.numer), "den": jsonable(x.denom)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)

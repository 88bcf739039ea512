"""Structured pass/fail records for verification cases."""

from __future__ import annotations

import contextlib
import time
from dataclasses import dataclass, field

PASS, FAIL, SKIPPED, RESOURCE_LIMIT = "pass", "fail", "skipped", "resource-limit"
VERDICTS = (PASS, FAIL, SKIPPED, RESOURCE_LIMIT)


@dataclass
class SubCheck:
    name: str
    ok: bool
    witness: str


@dataclass
class VerificationReport:
    id: str
    claim: str
    anchor: str
    verdict: str = PASS
    witnesses: list[str] = field(default_factory=list)
    millis: int = 0
    checks: list[SubCheck] = field(default_factory=list)
    data: dict = field(default_factory=dict)  # machine-readable values for tests, not serialised

    def check(self, name: str, ok: bool, witness: str = "") -> bool:
        ok = bool(ok)
        self.checks.append(SubCheck(name, ok, witness))
        self.witnesses.append(f"{name}: {'ok' if ok else 'FAILED'}" + (f" ({witness})" if witness else ""))
        if not ok and self.verdict == PASS:
            self.verdict = FAIL
        return ok

    def note(self, text: str):
        self.witnesses.append(text)

    def merge(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(SubCheck(prefix + c.name, c.ok, c.witness))
            if not c.ok and self.verdict == PASS:
                self.verdict = FAIL
        self.witnesses.extend(prefix + w for w in other.witnesses)
        self.data.update({prefix + k: v for k, v in other.data.items()})
        if other.verdict in (RESOURCE_LIMIT, SKIPPED) and self.verdict == PASS:
            self.verdict = other.verdict

    def mark_resource_limit(self, reason: str):
        self.verdict = RESOURCE_LIMIT
        self.witnesses.append(f"resource limit: {reason}")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def to_json(self, timing: bool = True) -> dict:
        return {"id": self.id, "claim": self.claim, "anchor": self.anchor, "verdict": self.verdict,
                "witnesses": list(self.witnesses), "millis": self.millis if timing else 0}

    def summary(self) -> str:
        head = f"[{self.verdict.upper()}] {self.id}: {self.claim} ({self.millis} ms)"
        return "\n".join([head] + ["    " + w for w in self.witnesses])

    @contextlib.contextmanager
    def timed(self):
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            self.millis = int(round((time.perf_counter() - t0) * 1000))

"""Verification records shared by the ring modules and the CLI."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class CheckRecord:
    check_id: str
    degree: Any
    status: str  # "pass" or "fail"
    tag: str = ""
    witness: Optional[str] = None
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"check": self.check_id, "degree": self.degree, "status": self.status, "tag": self.tag}
        if self.witness is not None:
            out["witness"] = self.witness
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status != "pass"]

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "checks": [c.to_json(timings) for c in self.checks],
        }


class VerificationFailure(Exception):
    """A verification run found a counterexample; ``report`` has the details."""

    def __init__(self, report: Report):
        self.report = report
        first = report.failures[0] if report.failures else None
        msg = "verification failed"
        if first is not None:
            msg = f"{first.check_id} failed in degree {first.degree}: {first.witness}"
        super().__init__(msg)

    def __reduce__(self):
        return (type(self), (self.report,))


class _Checker:
    """Collects one record per degree; used via :func:`checking`."""

    def __init__(self, check_id: str, tag: str):
        self.check_id = check_id
        self.tag = tag
        self.report = Report()

    @contextmanager
    def degree(self, n):
        rec = CheckRecord(self.check_id, n, "pass", self.tag)
        start = time.perf_counter()
        try:
            yield rec
        finally:
            rec.seconds = time.perf_counter() - start
            self.report.checks.append(rec)

    def fail(self, rec: CheckRecord, witness: str) -> None:
        if rec.status == "pass":
            rec.status = "fail"
            rec.witness = witness

    def finish(self) -> Report:
        if not self.report.ok:
            raise VerificationFailure(self.report)
        return self.report


def checking(check_id: str, tag: str) -> _Checker:
    return _Checker(check_id, tag)

"""Outcome records shared by all verification routines."""

from __future__ import annotations

from dataclasses import dataclass

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis-not-met"
INCONCLUSIVE = "inconclusive"


@dataclass
class Check:
    name: str
    status: str | bool
    detail: str = ""

    def __post_init__(self):
        if isinstance(self.status, bool):
            self.status = PASS if self.status else FAIL

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def all_ok(checks) -> bool:
    """True when nothing failed; skipped hypotheses do not count as failures."""
    return not any(c.failed for c in checks)

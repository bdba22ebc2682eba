"""Structured pass/fail results shared by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class VerificationOutcome:
    """Result of one verification run.

    ``status`` is ``pass``, ``fail``, or ``not_applicable`` (hypotheses of
    the statement under test could not be certified, e.g. the Keane check
    failed, so the bound is not asserted either way).  ``failures`` carries
    one entry per mismatch with both sides of the comparison.
    """

    check: str
    status: str
    details: dict = field(default_factory=dict)
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def applicable(self) -> bool:
        return self.status != NOT_APPLICABLE

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "passed": self.passed,
            "details": _jsonable(self.details),
            "failures": [_jsonable(f) for f in self.failures],
        }


def outcome_pass(check: str, **details: Any) -> VerificationOutcome:
    return VerificationOutcome(check=check, status=PASS, details=details)


def outcome_fail(check: str, failures, **details: Any) -> VerificationOutcome:
    return VerificationOutcome(
        check=check, status=FAIL, details=details, failures=tuple(failures)
    )


def outcome_not_applicable(check: str, reason: str, **details: Any) -> VerificationOutcome:
    details = dict(details)
    details["reason"] = reason
    return VerificationOutcome(check=check, status=NOT_APPLICABLE, details=details)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return repr(value)

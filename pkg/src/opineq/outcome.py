"""The result record shared by every inequality check."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import matrix_to_json

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class Hypothesis:
    """A named hypothesis; satisfied exactly when ``slack >= 0``."""

    name: str
    slack: float

    @property
    def satisfied(self) -> bool:
        return bool(self.slack >= 0)


def flag(name: str, ok: bool) -> Hypothesis:
    return Hypothesis(name, 0.0 if ok else -1.0)


@dataclass
class CheckOutcome:
    """One evaluated instance of an inequality ``lhs >= rhs``.

    ``margin`` is ``lhs - rhs`` for scalar inequalities and the smallest
    eigenvalue of ``lhs - rhs`` for operator ones.  ``verdict`` is one of
    ``"pass"``, ``"violation"`` or ``"skipped"``; a skip names the first
    failed hypothesis in ``skipped_on``.  ``extras`` holds diagnostic series
    that do not enter the verdict.
    """

    ineq_id: str
    hypotheses: list
    lhs: object
    rhs: object
    margin: float
    scale: float
    verdict: str
    skipped_on: str | None = None
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "ineq_id": self.ineq_id,
            "hypotheses": [{"name": h.name, "satisfied": h.satisfied, "slack": _num(h.slack)} for h in self.hypotheses],
            "lhs": _value(self.lhs),
            "rhs": _value(self.rhs),
            "margin": _num(self.margin),
            "scale": _num(self.scale),
            "verdict": self.verdict,
            "skipped_on": self.skipped_on,
            "extras": {k: _num(v) for k, v in sorted(self.extras.items())},
        }


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _value(v):
    if v is None:
        return None
    if np.ndim(v) == 2:
        return matrix_to_json(v)
    return _num(np.real(v))


def skipped(ineq_id: str, hyps: list) -> CheckOutcome:
    failed = next(h for h in hyps if not h.satisfied)
    return CheckOutcome(ineq_id, hyps, None, None, math.nan, math.nan, "skipped", failed.name)


def gate(hyps: list, gate_bypass: bool) -> bool:
    """True when evaluation should proceed."""
    return gate_bypass or all(h.satisfied for h in hyps)


def finish(ineq_id, hyps, lhs, rhs, margin, scale, tol, extras=None) -> CheckOutcome:
    """Assemble an evaluated outcome; a violation needs ``margin < -tol * scale``."""
    ok = all(h.satisfied for h in hyps)
    if margin < -tol * scale:
        verdict = "violation"
    else:
        verdict = "pass"
    skipped_on = None
    if not ok:
        # only reached under gate bypass; the record keeps the failed hypothesis
        skipped_on = next(h.name for h in hyps if not h.satisfied)
    return CheckOutcome(ineq_id, hyps, lhs, rhs, float(margin), float(scale), verdict, skipped_on, extras or {})

"""
Scalar functions with operator-theoretic claims, and randomized falsifiers
for those claims.

A :class:`ScalarFunction` carries a domain interval and a set of claimed
properties.  The testers in this module never prove a claim; they search for
a counterexample and report ``"no_counterexample"`` when none turns up.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import (
    Interval,
    apply_scalar_function,
    as_hermitian,
    eigvalsh,
    fmt_real,
    matrix_from_json,
    matrix_to_json,
    scale_of,
)
from .sampling import random_psd_in, trial_rng

__all__ = [
    "CLAIMS",
    "PropertyVerdict",
    "ScalarFunction",
    "builtin_affine",
    "builtin_resolvent",
    "get_function",
    "reevaluate_witness",
    "test_operator_concave",
    "test_operator_decreasing",
]

CLAIMS = frozenset({"operator_decreasing", "operator_concave", "positive_valued", "decreasing", "concave"})
MIN_SAMPLE_WIDTH = 1e-6
DEFAULT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ScalarFunction:
    """Real function on an interval ``domain`` inside ``(0, inf)``.

    ``evaluator`` must accept numpy arrays.  Operator claims imply the
    corresponding scalar ones (``decreasing``, ``concave``), which are added
    automatically.
    """

    label: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    domain: Interval
    claims: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        claims = frozenset(self.claims)
        unknown = claims - CLAIMS
        if unknown:
            raise ValueError(f"unknown claims {sorted(unknown)}")
        if "operator_decreasing" in claims:
            claims |= {"decreasing"}
        if "operator_concave" in claims:
            claims |= {"concave"}
        object.__setattr__(self, "claims", claims)
        if self.domain.lo < 0:
            raise ValueError(f"domain {self.domain} is not contained in (0, inf)")
        if "positive_valued" in claims:
            pts = _interior_grid(self.domain)
            vals = np.asarray(self.evaluator(pts), dtype=float)
            if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
                raise ValueError(f"{self.label} claims positive values but is not positive on {self.domain}")

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    def on(self, A) -> np.ndarray:
        """``f(A)`` with the spectrum checked against the domain."""
        return apply_scalar_function(A, self)

    def claims_all(self, *names) -> bool:
        return all(n in self.claims for n in names)


def _interior_grid(J: Interval, k: int = 257) -> np.ndarray:
    lo = J.lo if math.isfinite(J.lo) else -1e6
    hi = J.hi if math.isfinite(J.hi) else lo + 1e6
    pts = np.linspace(lo, hi, k)
    if not J.lo_closed:
        pts = pts[1:]
    if not J.hi_closed:
        pts = pts[:-1]
    return pts


def builtin_affine(c: float, J: Interval) -> ScalarFunction:
    """``f(t) = c - t``; operator decreasing, operator concave, positive on ``J``."""
    c = float(c)
    # positivity at the right end; an open end may touch zero
    end = c - J.hi
    if end < 0 or (end == 0 and J.hi_closed):
        raise ValueError(f"c - t is not positive on {J} for c = {c}")
    return ScalarFunction(
        f"affine:{fmt_real(c)}",
        lambda x, c=c: c - x,
        J,
        frozenset({"operator_decreasing", "operator_concave", "positive_valued"}),
    )


def builtin_resolvent(c: float, k: float, J: Interval) -> ScalarFunction:
    """``f(t) = k - 1/(c - t)`` with the pole ``c`` to the right of ``J``.

    ``1/(c - t)`` is operator monotone and operator convex for ``t < c``, so
    ``f`` is operator decreasing and operator concave there.
    """
    c, k = float(c), float(k)
    if c < J.hi or (c == J.hi and J.hi_closed):
        raise ValueError(f"pole c = {c} must lie to the right of {J}")
    if c - J.hi == 0 or k - 1.0 / (c - J.hi) < 0:
        raise ValueError(f"k - 1/(c - t) is not positive on {J}")
    return ScalarFunction(
        f"resolvent:{fmt_real(c)},{fmt_real(k)}",
        lambda x, c=c, k=k: k - 1.0 / (c - x),
        J,
        frozenset({"operator_decreasing", "operator_concave", "positive_valued"}),
    )


def _c_minus_square(c: float) -> ScalarFunction:
    J = Interval.open(0, 4)
    if c <= 16:
        raise ValueError("c - t^2 needs c > 16 to stay positive on (0, 4)")
    # t^2 is operator convex, so c - t^2 is operator concave; not operator monotone
    return ScalarFunction(
        f"c_minus_sq:{fmt_real(c)}", lambda x, c=c: c - x * x, J,
        frozenset({"operator_concave", "decreasing", "positive_valued"}),
    )


@functools.lru_cache(maxsize=None)
def get_function(label: str) -> ScalarFunction:
    """Look up a built-in function by label.

    =================== ===================== ==========
    label               f(t)                  domain
    =================== ===================== ==========
    ``affine:c``        ``c - t``             (0, 1)
    ``resolvent:c,k``   ``k - 1/(c - t)``     (0, 1)
    ``c_minus_sq:c``    ``c - t^2``           (0, 4)
    ``exp_neg``         ``exp(-t)``           (0, 4)
    ``sqrt``            ``t^{1/2}``           (0, 4)
    ``square``          ``t^2``               (0, 1)
    ``inverse``         ``1/t``               (0, 4)
    =================== ===================== ==========
    """
    name, _, rest = label.strip().partition(":")
    args = [float(a) for a in rest.split(",")] if rest else []
    if name == "affine":
        return builtin_affine(args[0] if args else 1.0, Interval.open(0, 1))
    if name == "resolvent":
        c, k = args if args else (2.0, 1.5)
        return builtin_resolvent(c, k, Interval.open(0, 1))
    if name == "c_minus_sq":
        return _c_minus_square(args[0] if args else 17.0)
    if args:
        raise ValueError(f"function {name!r} takes no parameters")
    if name == "exp_neg":
        return ScalarFunction("exp_neg", lambda x: np.exp(-x), Interval.open(0, 4),
                              frozenset({"decreasing", "positive_valued"}))
    if name == "sqrt":
        return ScalarFunction("sqrt", np.sqrt, Interval.open(0, 4),
                              frozenset({"operator_concave", "positive_valued"}))
    if name == "square":
        return ScalarFunction("square", np.square, Interval.open(0, 1), frozenset({"positive_valued"}))
    if name == "inverse":
        return ScalarFunction("inverse", lambda x: 1.0 / x, Interval.open(0, 4),
                              frozenset({"operator_decreasing", "positive_valued"}))
    raise ValueError(f"unknown function label {label!r}")


# --------------------------------------------------------------------------
# falsifiers
# --------------------------------------------------------------------------

@dataclass
class PropertyVerdict:
    property: str
    trials: int
    status: str
    witness: dict | None = None

    @property
    def found(self) -> bool:
        return self.status == "counterexample"

    def to_json(self) -> dict:
        return {"property": self.property, "trials": self.trials, "status": self.status, "witness": self.witness}


def _sampling_window(J: Interval) -> tuple[float, float]:
    if not (math.isfinite(J.lo) and math.isfinite(J.hi)):
        raise ValueError(f"cannot sample spectra from the unbounded interval {J}")
    if J.width < MIN_SAMPLE_WIDTH:
        raise ValueError(f"interval {J} is too narrow to sample (width {J.width:.1e})")
    return J.lo, J.hi


def _random_psd_bounded(n, bound, rng) -> np.ndarray:
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    # random rank so that low-rank perturbations are reachable
    rank = int(rng.integers(1, n + 1))
    G = G[:, :rank]
    P = G @ G.conj().T
    top = eigvalsh(P)[-1]
    return as_hermitian(P * (rng.uniform(0.0, 1.0) * bound / top))


def _decreasing_margin(f, A, B):
    fA, fB = f.on(A), f.on(B)
    return float(eigvalsh(fB - fA)[0]), scale_of(A, B, fA, fB)


def _concave_margin(f, A, B, lam):
    mid = f.on(lam * A + (1 - lam) * B)
    fA, fB = f.on(A), f.on(B)
    return float(eigvalsh(mid - lam * fA - (1 - lam) * fB)[0]), scale_of(A, B, mid, fA, fB)


def reevaluate_witness(f: ScalarFunction, prop: str, witness: dict) -> float:
    """Recompute the margin of a serialized witness."""
    A = matrix_from_json(witness["A"])
    B = matrix_from_json(witness["B"])
    if prop == "operator_decreasing":
        return _decreasing_margin(f, A, B)[0]
    if prop == "operator_concave":
        return _concave_margin(f, A, B, float(witness["lambda"]))[0]
    raise ValueError(f"unknown property {prop!r}")


def test_operator_decreasing(f: ScalarFunction, dim: int, trials: int, rng_seed: int = 0,
                             tol: float = DEFAULT_TOL) -> PropertyVerdict:
    """Search for ``B <= A`` with ``f(A) <= f(B)`` failing.

    Pairs are built as ``A = B + P`` with ``P >= 0`` and ``||P|| <= width(J)/2``;
    draws whose ``A`` leaves ``J`` are redrawn.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    lo, hi = _sampling_window(f.domain)
    for trial in range(trials):
        rng = trial_rng(rng_seed, "operator_decreasing", dim, trial)
        for _ in range(100):
            B = random_psd_in(dim, (lo, hi), rng)
            A = B + _random_psd_bounded(dim, f.domain.width / 2, rng)
            if f.domain.slack(eigvalsh(A)) >= 0:
                break
        else:
            continue
        margin, scale = _decreasing_margin(f, A, B)
        if margin < -tol * scale:
            witness = {"A": matrix_to_json(A), "B": matrix_to_json(B), "lambda": None,
                       "margin": margin, "trial": trial}
            return PropertyVerdict("operator_decreasing", trial + 1, "counterexample", witness)
    return PropertyVerdict("operator_decreasing", trials, "no_counterexample")


def test_operator_concave(f: ScalarFunction, dim: int, trials: int, rng_seed: int = 0,
                          tol: float = DEFAULT_TOL) -> PropertyVerdict:
    """Search for ``lam f(A) + (1-lam) f(B) <= f(lam A + (1-lam) B)`` failing."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    lo, hi = _sampling_window(f.domain)
    for trial in range(trials):
        rng = trial_rng(rng_seed, "operator_concave", dim, trial)
        A = random_psd_in(dim, (lo, hi), rng)
        B = random_psd_in(dim, (lo, hi), rng)
        lam = float(rng.uniform())
        margin, scale = _concave_margin(f, A, B, lam)
        if margin < -tol * scale:
            witness = {"A": matrix_to_json(A), "B": matrix_to_json(B), "lambda": lam,
                       "margin": margin, "trial": trial}
            return PropertyVerdict("operator_concave", trial + 1, "counterexample", witness)
    return PropertyVerdict("operator_concave", trials, "no_counterexample")


# keep pytest from collecting the falsifiers when they are imported into test modules
test_operator_decreasing.__test__ = False
test_operator_concave.__test__ = False

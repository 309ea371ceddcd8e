"""Schatten and Ky Fan norms, and the two norm inequalities they feed."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, fmt_real, operator_norm, singular_values
from .outcome import DEFAULT_TOL, CheckOutcome, finish

__all__ = [
    "UnitarilyInvariantNorm",
    "check_norm_agm",
    "check_norm_product_bound",
    "norm_eval",
    "parse_norm",
]


@dataclass(frozen=True)
class UnitarilyInvariantNorm:
    """``schatten`` with ``p >= 1`` (``p = inf`` is the operator norm) or ``ky_fan`` with ``k >= 1``."""

    kind: str
    p: float | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind == "schatten":
            if self.p is None or not self.p >= 1:
                raise ValueError(f"Schatten norm needs p >= 1, got {self.p}")
        elif self.kind == "ky_fan":
            if self.k is None or int(self.k) != self.k or self.k < 1:
                raise ValueError(f"Ky Fan norm needs an integer k >= 1, got {self.k}")
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def schatten(cls, p):
        return cls("schatten", p=float(p))

    @classmethod
    def ky_fan(cls, k):
        return cls("ky_fan", k=int(k))

    def applies_to(self, n: int) -> bool:
        return self.kind == "schatten" or self.k <= n

    def __call__(self, X) -> float:
        return norm_eval(self, X)

    @property
    def descriptor(self) -> str:
        if self.kind == "ky_fan":
            return f"kf:{self.k}"
        if math.isinf(self.p):
            return "sinf"
        if self.p in (1.0, 2.0):
            return f"s{int(self.p)}"
        return f"sp:{fmt_real(self.p)}"


def parse_norm(text: str) -> UnitarilyInvariantNorm:
    """Parse ``s1``, ``s2``, ``sinf``, ``kf:<k>`` or ``sp:<p>``."""
    text = text.strip()
    if text == "s1":
        return UnitarilyInvariantNorm.schatten(1)
    if text == "s2":
        return UnitarilyInvariantNorm.schatten(2)
    if text == "sinf":
        return UnitarilyInvariantNorm.schatten(math.inf)
    if text.startswith("kf:"):
        return UnitarilyInvariantNorm.ky_fan(int(text[3:]))
    if text.startswith("sp:"):
        return UnitarilyInvariantNorm.schatten(float(text[3:]))
    raise ValueError(f"unknown norm descriptor {text!r}")


def _from_singular_values(N: UnitarilyInvariantNorm, s: np.ndarray) -> float:
    if N.kind == "ky_fan":
        if N.k > s.size:
            raise ValueError(f"Ky Fan k = {N.k} exceeds the dimension {s.size}")
        return float(np.sum(s[:N.k]))
    if math.isinf(N.p):
        return float(s[0])
    if N.p == 1:
        return float(np.sum(s))
    top = s[0]
    if top == 0:
        return 0.0
    # factor out the largest value so large p cannot overflow
    return float(top * np.sum((s / top) ** N.p) ** (1.0 / N.p))


def norm_eval(N: UnitarilyInvariantNorm, X) -> float:
    return _from_singular_values(N, singular_values(X))


def _square_operands(*mats):
    out = [as_matrix(M) for M in mats]
    for M in out[1:]:
        if M.shape != out[0].shape:
            raise ValueError(f"dimension mismatch: {out[0].shape} vs {M.shape}")
    return out


def check_norm_product_bound(N: UnitarilyInvariantNorm, A, X, B, tol: float = DEFAULT_TOL,
                             gate_bypass: bool = False) -> CheckOutcome:
    """``|||A X B||| <= ||A|| |||X||| ||B|||``, with operator norms on ``A`` and ``B``."""
    A, X, B = _square_operands(A, X, B)
    lhs = norm_eval(N, A @ X @ B)
    rhs = operator_norm(A) * norm_eval(N, X) * operator_norm(B)
    scale = 1.0 + max(lhs, rhs)
    return finish("bound_3_2", [], lhs, rhs, rhs - lhs, scale, tol)


def check_norm_agm(N: UnitarilyInvariantNorm, A, X, B, tol: float = DEFAULT_TOL,
                   gate_bypass: bool = False) -> CheckOutcome:
    """``|||A^* X B||| <= 1/2 |||A A^* X + X B B^*|||``."""
    A, X, B = _square_operands(A, X, B)
    Ah = A.conj().T
    lhs = norm_eval(N, Ah @ X @ B)
    rhs = 0.5 * norm_eval(N, A @ Ah @ X + X @ B @ B.conj().T)
    scale = 1.0 + max(lhs, rhs)
    return finish("agm_3_3", [], lhs, rhs, rhs - lhs, scale, tol)

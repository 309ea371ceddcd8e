"""Weighted operator means of two positive definite matrices."""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .linalg import DomainError, _eig, _hermitize, as_hermitian, fmt_real, matrix_power

__all__ = [
    "MeanSpec",
    "parse_mean",
    "power_mean",
    "weighted_arithmetic_mean",
    "weighted_geometric_mean",
]

PD_RTOL = 1e-10


def _pd_factors(A: np.ndarray, name: str):
    """Return ``A^{1/2}`` and ``A^{-1/2}``, enforcing ``lambda_min > 1e-10 * scale``."""
    w, U = _eig(A)
    scale = 1.0 + float(np.max(np.abs(w)))
    if w[0] <= PD_RTOL * scale:
        raise DomainError(f"{name} is not positive definite (min eigenvalue {w[0]:.3e})")
    r = np.sqrt(w)
    Uh = U.conj().T
    return _hermitize((U * r) @ Uh), _hermitize((U / r) @ Uh)


def _check_weight(t):
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"weight t must lie in [0, 1], got {t}")
    return t


def weighted_geometric_mean(A, B, t: float = 0.5) -> np.ndarray:
    """``A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}``."""
    t = _check_weight(t)
    A = as_hermitian(A)
    B = as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    half, ihalf = _pd_factors(A, "A")
    _pd_factors(B, "B")
    inner = matrix_power(ihalf @ B @ ihalf, t)
    return _hermitize(half @ inner @ half)


def power_mean(A, B, r: float, t: float = 0.5) -> np.ndarray:
    """``A #_{r,t} B = A^{1/2} ((1-t) I + t (A^{-1/2} B A^{-1/2})^r)^{1/r} A^{1/2}``.

    ``r`` ranges over ``[-1, 1]`` without zero; the ``r -> 0`` limit is the
    geometric mean and must be requested as such.
    """
    r = float(r)
    if r == 0.0:
        raise ValueError("r = 0 is the geometric mean; call weighted_geometric_mean")
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"power r must lie in [-1, 1], got {r}")
    t = _check_weight(t)
    A = as_hermitian(A)
    B = as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    half, ihalf = _pd_factors(A, "A")
    _pd_factors(B, "B")
    n = A.shape[0]
    inner = (1.0 - t) * np.eye(n) + t * matrix_power(ihalf @ B @ ihalf, r)
    return _hermitize(half @ matrix_power(inner, 1.0 / r) @ half)


def weighted_arithmetic_mean(A, B, t: float = 0.5) -> np.ndarray:
    t = _check_weight(t)
    A = as_hermitian(A)
    B = as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return (1.0 - t) * A + t * B


@dataclass(frozen=True)
class MeanSpec:
    """One member of the family ``m_t``: geometric, power(r) or arithmetic."""

    kind: str
    t: float = 0.5
    r: float | None = None

    def __post_init__(self):
        if self.kind not in ("geometric", "power", "arithmetic"):
            raise ValueError(f"unknown mean kind {self.kind!r}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"weight t must lie in [0, 1], got {self.t}")
        if self.kind == "power":
            if self.r is None or self.r == 0 or not -1.0 <= self.r <= 1.0:
                raise ValueError(f"power mean needs r in [-1, 1] without 0, got {self.r}")
        elif self.r is not None:
            raise ValueError(f"{self.kind} mean takes no r")

    def __call__(self, A, B) -> np.ndarray:
        if self.kind == "geometric":
            return weighted_geometric_mean(A, B, self.t)
        if self.kind == "power":
            return power_mean(A, B, self.r, self.t)
        return weighted_arithmetic_mean(A, B, self.t)

    def with_weight(self, t: float) -> "MeanSpec":
        return MeanSpec(self.kind, t, self.r)

    @property
    def descriptor(self) -> str:
        if self.kind == "geometric":
            return f"geo:{fmt_real(self.t)}"
        if self.kind == "power":
            return f"pow:{fmt_real(self.r)},{fmt_real(self.t)}"
        return f"arith:{fmt_real(self.t)}"


_MEAN_RE = re.compile(r"^(geo|pow|arith)(?::(.*))?$")


def parse_mean(text: str, t: float | None = None) -> MeanSpec:
    """Parse ``geo[:t]``, ``pow:r[,t]`` or ``arith[:t]``.

    A weight given in ``text`` wins over the ``t`` argument; with neither,
    the weight defaults to 1/2.
    """
    m = _MEAN_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse mean descriptor {text!r}")
    kind, rest = m.groups()
    args = [float(a) for a in rest.split(",")] if rest else []
    if kind == "pow":
        if not args:
            raise ValueError("pow mean needs r, as in 'pow:-1'")
        r, weights = args[0], args[1:]
    else:
        r, weights = None, args
    if len(weights) > 1:
        raise ValueError(f"too many parameters in {text!r}")
    weight = weights[0] if weights else (0.5 if t is None else t)
    full = {"geo": "geometric", "pow": "power", "arith": "arithmetic"}[kind]
    return MeanSpec(full, weight, r)


def has_fixed_weight(text: str) -> bool:
    """Whether a mean descriptor pins its weight ``t``."""
    kind, _, rest = text.partition(":")
    n_args = len(rest.split(",")) if rest else 0
    return n_args >= (2 if kind == "pow" else 1)

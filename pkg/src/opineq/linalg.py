"""
Dense Hermitian linear algebra
==============================

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Hermitian
inputs are symmetrized on construction, ``(M + M^*)/2``, instead of being
rejected, so round-off from products such as ``A^{1/2} X A^{1/2}`` is
absorbed silently.

The eigensolver is a cyclic complex Jacobi iteration compiled with numba.
Everything else (functional calculus, fractional powers, Loewner order,
singular values) is built on top of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numba
import numpy as np

__all__ = [
    "ConvergenceError",
    "DomainError",
    "Interval",
    "OrderOutcome",
    "SpectralDecomposition",
    "adjoint",
    "apply_scalar_function",
    "as_hermitian",
    "as_matrix",
    "eigvalsh",
    "functional_calculus",
    "hermitian_eig",
    "is_contraction",
    "loewner_leq",
    "matrix_from_json",
    "matrix_power",
    "matrix_to_json",
    "min_eigenvalue",
    "operator_norm",
    "scale_of",
    "singular_values",
    "spectrum_in_interval",
]

MAX_SWEEPS = 50
OFFDIAG_RTOL = 1e-13
# widening of closed finite endpoints / interiority required at open ones
CLOSED_END_SLACK = 1e-10
OPEN_END_SLACK = 1e-12


class ConvergenceError(np.linalg.LinAlgError):
    """Jacobi iteration hit the sweep cap; ``residual`` is the off-diagonal norm."""

    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal Frobenius residual {residual:.3e})"
        )


class DomainError(ValueError):
    """Raised when a spectrum leaves the domain of a scalar function."""


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def as_matrix(X) -> np.ndarray:
    """Validate ``X`` as a finite square matrix and return a complex copy."""
    M = np.array(X, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.isfinite(M).all():
        raise ValueError("matrix has non-finite entries")
    return M


def as_hermitian(X) -> np.ndarray:
    """Return the Hermitian part ``(X + X^*)/2`` of a validated square matrix."""
    M = as_matrix(X)
    return 0.5 * (M + M.conj().T)


def adjoint(X: np.ndarray) -> np.ndarray:
    return np.conj(X).T


def fmt_real(x: float) -> str:
    """Shortest round-tripping text for a real number, without a trailing ``.0``."""
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def _hermitize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.conj().T)


def _check_same_shape(*mats: np.ndarray) -> None:
    shape = mats[0].shape
    for M in mats[1:]:
        if M.shape != shape:
            raise ValueError(f"dimension mismatch: {shape} vs {M.shape}")


# --------------------------------------------------------------------------
# Jacobi eigensolver
# --------------------------------------------------------------------------

@numba.njit(cache=True)
def _jacobi_kernel(A, max_sweeps, rtol):
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += A[i, j].real ** 2 + A[i, j].imag ** 2
    threshold = rtol * (1.0 + math.sqrt(fro))

    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * (A[i, j].real ** 2 + A[i, j].imag ** 2)
        off = math.sqrt(off)
        if off <= threshold:
            return V, off, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                mod = abs(b)
                if mod == 0.0:
                    continue
                # phase reduction: rotate b onto the positive real axis
                ph = b / mod
                a_pp = A[p, p].real
                a_qq = A[q, q].real
                theta = (a_qq - a_pp) / (2.0 * mod)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cph = np.conj(ph)
                # A <- A J,  J = [[c, s], [-s conj(ph), c conj(ph)]]
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * cph * akq
                    A[k, q] = s * akp + c * cph * akq
                # A <- J^* A
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * ph * aqk
                    A[q, k] = s * apk + c * ph * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = a_pp - t * mod
                A[q, q] = a_qq + t * mod
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * cph * vkq
                    V[k, q] = s * vkp + c * cph * vkq
    return V, off, -1


class SpectralDecomposition(NamedTuple):
    """Ascending real eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def hermitian_eig(A) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Converges when the off-diagonal Frobenius norm drops below
    ``1e-13 * (1 + ||A||_F)``; raises :class:`ConvergenceError` after 50
    sweeps otherwise.
    """
    H = as_hermitian(A)
    return _eig(H)


@numba.njit(cache=True)
def _sorted_eig(H, max_sweeps, rtol):
    work = H.copy()
    V, off, sweeps = _jacobi_kernel(work, max_sweeps, rtol)
    n = H.shape[0]
    w = np.empty(n)
    for i in range(n):
        w[i] = work[i, i].real
    order = np.argsort(w, kind="mergesort")
    return w[order], V[:, order], off, sweeps


def _eig(H: np.ndarray) -> SpectralDecomposition:
    # H must already be Hermitian complex128
    if H.shape[0] == 1:
        return SpectralDecomposition(np.array([H[0, 0].real]), np.ones((1, 1), dtype=np.complex128))
    w, V, off, sweeps = _sorted_eig(np.ascontiguousarray(H), MAX_SWEEPS, OFFDIAG_RTOL)
    if sweeps < 0:
        raise ConvergenceError(off, MAX_SWEEPS)
    return SpectralDecomposition(w, V)


def eigvalsh(A) -> np.ndarray:
    """Ascending eigenvalues of the Hermitian part of ``A``."""
    return _eig(as_hermitian(A)).eigenvalues


def min_eigenvalue(A) -> float:
    return float(eigvalsh(A)[0])


# --------------------------------------------------------------------------
# intervals and functional calculus
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Real interval with independently open or closed endpoints."""

    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @classmethod
    def open(cls, lo, hi):
        return cls(float(lo), float(hi))

    @classmethod
    def closed(cls, lo, hi):
        return cls(float(lo), float(hi), True, True)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def slack(self, values) -> float:
        """Smallest signed distance of ``values`` to the admissible region.

        Closed finite endpoints are widened by 1e-10, open endpoints demand
        interiority by 1e-12; the result is ``>= 0`` iff every value is
        admissible.
        """
        values = np.asarray(values, dtype=float)
        s = np.inf
        if math.isfinite(self.lo):
            pad = CLOSED_END_SLACK if self.lo_closed else -OPEN_END_SLACK
            s = min(s, float(np.min(values - self.lo)) + pad)
        if math.isfinite(self.hi):
            pad = CLOSED_END_SLACK if self.hi_closed else -OPEN_END_SLACK
            s = min(s, float(np.min(self.hi - values)) + pad)
        return s

    def __contains__(self, x) -> bool:
        return self.slack([x]) >= 0

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo:g}, {self.hi:g}{']' if self.hi_closed else ')'}"


def functional_calculus(A, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """``U diag(func(lambda)) U^*`` for Hermitian ``A``; no domain checks."""
    w, U = _eig(as_hermitian(A))
    return _hermitize((U * func(w)) @ U.conj().T)


def apply_scalar_function(A, f, domain: Interval | None = None) -> np.ndarray:
    """Evaluate ``f(A)`` through the spectral decomposition of ``A``.

    ``f`` is either a callable on numpy arrays, or an object with
    ``evaluator`` and ``domain`` attributes (see
    :class:`opineq.functions.ScalarFunction`).  When a domain is known the
    spectrum is checked against it first.
    """
    evaluator = getattr(f, "evaluator", f)
    if domain is None:
        domain = getattr(f, "domain", None)
    w, U = _eig(as_hermitian(A))
    if domain is not None and domain.slack(w) < 0:
        bad = [x for x in w if x not in domain]
        raise DomainError(
            f"eigenvalue {bad[0]!r} of the argument lies outside the domain {domain}"
            + (f" of {f.label}" if hasattr(f, "label") else "")
        )
    vals = np.asarray(evaluator(w), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("scalar function returned non-finite values on the spectrum")
    return _hermitize((U * vals) @ U.conj().T)


def _is_integer(t: float) -> bool:
    return float(t).is_integer()


def matrix_power(A, t: float) -> np.ndarray:
    """Real power ``A^t`` of a Hermitian matrix.

    Non-negative integer powers are defined for any Hermitian ``A``.  Other
    positive powers need ``A >= 0``; eigenvalues above ``-1e-10 * scale`` are
    clamped to zero.  Negative powers need ``A`` positive definite.
    """
    t = float(t)
    H = as_hermitian(A)
    w, U = _eig(H)
    if _is_integer(t) and t >= 0:
        vals = w ** int(t)
    else:
        scale = 1.0 + float(np.max(np.abs(w)))
        if t < 0:
            if w[0] <= 0:
                raise DomainError(f"negative power {t} needs a positive definite matrix (min eigenvalue {w[0]:.3e})")
        elif w[0] < -1e-10 * scale:
            raise DomainError(f"fractional power {t} needs a positive semidefinite matrix (min eigenvalue {w[0]:.3e})")
        vals = np.maximum(w, 0.0) ** t
    return _hermitize((U * vals) @ U.conj().T)


# --------------------------------------------------------------------------
# order, norms, predicates
# --------------------------------------------------------------------------

def operator_norm(X) -> float:
    """Largest singular value."""
    return float(singular_values(X)[0])


def scale_of(*mats) -> float:
    """``1 + max`` operator norm over the participating matrices or scalars."""
    m = 0.0
    for M in mats:
        if M is None:
            continue
        if np.ndim(M) == 0:
            v = abs(complex(M))
        else:
            v = operator_norm(M)
        if math.isfinite(v):
            m = max(m, v)
    return 1.0 + m


@dataclass(frozen=True)
class OrderOutcome:
    holds: bool
    margin: float
    scale: float


def loewner_leq(A, B, tol: float = 1e-8) -> OrderOutcome:
    """Test ``A <= B``: the margin is the smallest eigenvalue of ``B - A``."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    _check_same_shape(A, B)
    margin = float(_eig(_hermitize(B - A)).eigenvalues[0])
    scale = 1.0 + max(operator_norm(A), operator_norm(B))
    return OrderOutcome(margin >= -tol * scale, margin, scale)


def singular_values(X) -> np.ndarray:
    """Singular values in descending order, from the eigenvalues of ``X^* X``."""
    M = as_matrix(X)
    # normalize by the largest entry so X^* X neither overflows nor underflows
    top = float(np.max(np.abs(M)))
    if top == 0.0:
        return np.zeros(M.shape[0])
    M = M / top
    w = _eig(_hermitize(M.conj().T @ M)).eigenvalues
    return top * np.sqrt(np.maximum(w, 0.0))[::-1]


def is_contraction(X, tol: float = 1e-8) -> bool:
    return operator_norm(X) <= 1.0 + tol


def spectrum_in_interval(A, J: Interval, tol: float = 0.0) -> bool:
    """True when every eigenvalue of ``A`` lies in ``J`` shrunk by ``tol`` at each finite end."""
    w = eigvalsh(A)
    lo_ok = (not math.isfinite(J.lo)) or (w[0] > J.lo + tol if not J.lo_closed else w[0] >= J.lo + tol)
    hi_ok = (not math.isfinite(J.hi)) or (w[-1] < J.hi - tol if not J.hi_closed else w[-1] <= J.hi - tol)
    return bool(lo_ok and hi_ok)


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def matrix_to_json(X) -> dict:
    """``{"n": n, "entries": [[[re, im], ...], ...]}``, row-major."""
    M = as_matrix(X)
    return {
        "n": int(M.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ValueError("matrix JSON needs 'n' and 'entries'")
    n = obj["n"]
    rows = obj["entries"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"invalid dimension {n!r}")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError("ragged or mis-sized rows in matrix JSON")
    M = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        for j, pair in enumerate(row):
            if len(pair) != 2:
                raise ValueError(f"entry ({i}, {j}) is not a [re, im] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ValueError(f"non-finite entry at ({i}, {j})")
            M[i, j] = complex(re, im)
    return M

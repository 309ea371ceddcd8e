"""Positive linear maps, positive functionals, sesquilinear forms and minorants."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_hermitian, as_matrix, eigvalsh, matrix_from_json, matrix_to_json, operator_norm
from .functions import PropertyVerdict
from .sampling import ginibre, trial_rng

__all__ = [
    "MinorantFunction",
    "PositiveLinearMap",
    "SesquilinearForm",
    "apply_map",
    "check_positivity",
    "is_unital",
    "minorant_eval",
    "sesq_eval",
]

KINDS = ("identity", "compression", "pinching", "functional_hs")


@dataclass(frozen=True, eq=False)
class PositiveLinearMap:
    """A positive map out of ``M_n``.

    ``compression`` sends ``X`` to ``V^* X V`` for an ``n x m`` isometry ``V``;
    ``pinching`` keeps the diagonal blocks of a partition of the indices;
    ``functional_hs`` is the scalar functional ``X -> tr(Z X Z)`` for ``Z >= 0``.
    Use the classmethod constructors, which validate their payloads.
    """

    kind: str
    n_in: int
    n_out: int
    V: np.ndarray | None = None
    blocks: tuple | None = None
    Z: np.ndarray | None = None

    @classmethod
    def identity(cls, n: int) -> "PositiveLinearMap":
        return cls("identity", n, n)

    @classmethod
    def compression(cls, V, tol: float = 1e-10) -> "PositiveLinearMap":
        V = np.array(V, dtype=np.complex128)
        if V.ndim != 2 or V.shape[1] > V.shape[0]:
            raise ValueError(f"isometry must be n x m with m <= n, got {V.shape}")
        m = V.shape[1]
        if np.linalg.norm(V.conj().T @ V - np.eye(m)) > tol:
            raise ValueError("V is not an isometry (V^* V != I)")
        return cls("compression", V.shape[0], m, V=V)

    @classmethod
    def pinching(cls, blocks, n: int) -> "PositiveLinearMap":
        blocks = tuple(tuple(int(i) for i in b) for b in blocks)
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(n)) or any(len(b) == 0 for b in blocks):
            raise ValueError(f"blocks {blocks} do not partition range({n})")
        return cls("pinching", n, n, blocks=blocks)

    @classmethod
    def functional_hs(cls, Z, tol: float = 1e-10) -> "PositiveLinearMap":
        Z = as_hermitian(Z)
        if eigvalsh(Z)[0] < -tol * (1.0 + operator_norm(Z)):
            raise ValueError("Z must be positive semidefinite")
        return cls("functional_hs", Z.shape[0], 1, Z=Z)

    @property
    def is_functional(self) -> bool:
        return self.kind == "functional_hs"

    def __call__(self, X):
        return apply_map(self, X)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n_in}
        if self.kind == "compression":
            out["isometry"] = [[[float(z.real), float(z.imag)] for z in row] for row in self.V]
        elif self.kind == "pinching":
            out["partition"] = [list(b) for b in self.blocks]
        elif self.kind == "functional_hs":
            out["Z"] = matrix_to_json(self.Z)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PositiveLinearMap":
        kind = obj.get("kind")
        if kind == "identity":
            return cls.identity(int(obj["n"]))
        if kind == "compression":
            V = np.array([[complex(re, im) for re, im in row] for row in obj["isometry"]])
            return cls.compression(V)
        if kind == "pinching":
            return cls.pinching(obj["partition"], int(obj["n"]))
        if kind == "functional_hs":
            return cls.functional_hs(matrix_from_json(obj["Z"]))
        raise ValueError(f"unknown map kind {kind!r}")


def apply_map(phi: PositiveLinearMap, X):
    """``Phi(X)``: a matrix, or a complex scalar for ``functional_hs``."""
    X = as_matrix(X)
    if X.shape[0] != phi.n_in:
        raise ValueError(f"map expects {phi.n_in} x {phi.n_in} input, got {X.shape}")
    if phi.kind == "identity":
        return X.copy()
    if phi.kind == "compression":
        return phi.V.conj().T @ X @ phi.V
    if phi.kind == "pinching":
        out = np.zeros_like(X)
        for b in phi.blocks:
            idx = np.ix_(b, b)
            out[idx] = X[idx]
        return out
    Z = phi.Z
    return complex(np.trace(Z @ X @ Z))


def is_unital(phi: PositiveLinearMap, tol: float = 1e-10) -> bool:
    if phi.kind == "functional_hs":
        return abs(np.trace(phi.Z @ phi.Z).real - 1.0) <= tol
    out = apply_map(phi, np.eye(phi.n_in))
    return float(np.linalg.norm(out - np.eye(phi.n_out), 2)) <= tol * (1.0 + operator_norm(out))


def check_positivity(phi: PositiveLinearMap, dim: int | None = None, trials: int = 1000,
                     rng_seed: int = 0, tol: float = 1e-8) -> PropertyVerdict:
    """Falsifier: random ``X >= 0`` of random rank must map to ``Phi(X) >= 0``."""
    n = phi.n_in if dim is None else dim
    if n != phi.n_in:
        raise ValueError(f"map acts on dimension {phi.n_in}, not {n}")
    for trial in range(trials):
        rng = trial_rng(rng_seed, "positivity", n, trial)
        G = ginibre(n, int(rng.integers(1, n + 1)), rng)
        X = as_hermitian(G @ G.conj().T)
        Y = apply_map(phi, X)
        if phi.is_functional:
            margin = Y.real
            bad = margin < -tol * (1.0 + abs(Y)) or abs(Y.imag) > tol * (1.0 + abs(Y))
        else:
            margin = float(eigvalsh(Y)[0])
            bad = margin < -tol * (1.0 + operator_norm(Y))
        if bad:
            witness = {"X": matrix_to_json(X), "margin": float(margin), "trial": trial}
            return PropertyVerdict("positive", trial + 1, "counterexample", witness)
    return PropertyVerdict("positive", trials, "no_counterexample")


@dataclass(frozen=True, eq=False)
class SesquilinearForm:
    """``phi(x, y) = y^* G x`` with Gram matrix ``G >= 0``; linear in ``x``."""

    G: np.ndarray

    def __post_init__(self):
        G = as_hermitian(self.G)
        if eigvalsh(G)[0] < -1e-10 * (1.0 + operator_norm(G)):
            raise ValueError("Gram matrix must be positive semidefinite")
        object.__setattr__(self, "G", G)

    @property
    def n(self) -> int:
        return self.G.shape[0]

    def __call__(self, x, y) -> complex:
        return sesq_eval(self, x, y)


def sesq_eval(form: SesquilinearForm, x, y) -> complex:
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != (form.n,) or y.shape != (form.n,):
        raise ValueError(f"vectors must have length {form.n}")
    return complex(np.vdot(y, form.G @ x))


@dataclass(frozen=True)
class MinorantFunction:
    """Real function ``L`` on the complex plane with ``L(z) <= |z|``."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("re", "im", "abs", "neg_abs"):
            raise ValueError(f"unknown minorant {self.kind!r}")

    def __call__(self, z) -> float:
        return minorant_eval(self, z)


def minorant_eval(L: MinorantFunction, z) -> float:
    z = complex(z)
    if L.kind == "re":
        return z.real
    if L.kind == "im":
        return z.imag
    if L.kind == "abs":
        return abs(z)
    return -abs(z)

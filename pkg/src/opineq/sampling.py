"""Seeded random matrices: Haar unitaries, spectrum-controlled positive matrices and friends."""
from __future__ import annotations

import zlib

import numpy as np

from .linalg import Interval, as_hermitian

__all__ = [
    "random_commuting_normal_contractions",
    "random_commuting_pair",
    "random_isometry",
    "random_positive_map",
    "random_psd_in",
    "random_unit_vector",
    "random_unitary",
    "trial_rng",
]

DISC_RADIUS = 1.0 - 1e-3


def trial_rng(seed: int, key: str, dim: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, keyed on ``(seed, key, dim, trial)``.

    Philox is counter based: the key holds ``(seed, crc32(key))`` and the
    upper counter words hold ``(dim, trial)``.  Draws advance only the low
    word, so streams of distinct trials never meet, and the result does not
    depend on the order in which trials run.
    """
    bitgen = np.random.Philox(key=[int(seed) & (2**64 - 1), zlib.crc32(key.encode())],
                              counter=[0, 0, int(dim), int(trial)])
    return np.random.Generator(bitgen)


def ginibre(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a Ginibre matrix with ``diag(R) > 0``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    Q, R = np.linalg.qr(ginibre(n, n, rng))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_isometry(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """``n x m`` matrix with orthonormal columns (``V^* V = I_m``)."""
    if m > n:
        raise ValueError(f"an isometry C^{m} -> C^{n} needs m <= n")
    Q, R = np.linalg.qr(ginibre(n, m, rng))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def _bounds(interval):
    if isinstance(interval, Interval):
        return interval.lo, interval.hi
    a, b = interval
    return float(a), float(b)


def random_spectrum(n: int, interval, rng: np.random.Generator) -> np.ndarray:
    a, b = _bounds(interval)
    if not 0 <= a < b:
        raise ValueError(f"need 0 <= a < b, got [{a}, {b}]")
    delta = 1e-3 * (b - a)
    return rng.uniform(a + delta, b - delta, size=n)


def random_psd_in(n: int, interval, rng: np.random.Generator) -> np.ndarray:
    """Positive definite matrix with eigenvalues uniform in ``[a + d, b - d]``, ``d = 1e-3 (b - a)``."""
    w = random_spectrum(n, interval, rng)
    U = random_unitary(n, rng)
    return as_hermitian((U * w) @ U.conj().T)


def random_commuting_pair(n: int, intervals, rng: np.random.Generator):
    """Two positive definite matrices diagonal in one shared Haar basis.

    ``intervals`` is either one ``(a, b)`` used for both or a pair of them.
    """
    if isinstance(intervals, Interval) or np.ndim(intervals[0]) == 0:
        ia = ib = intervals
    else:
        ia, ib = intervals
    U = random_unitary(n, rng)
    wa = random_spectrum(n, ia, rng)
    wb = random_spectrum(n, ib, rng)
    Uh = U.conj().T
    return as_hermitian((U * wa) @ Uh), as_hermitian((U * wb) @ Uh)


def random_disc(n: int, rng: np.random.Generator, radius: float = DISC_RADIUS) -> np.ndarray:
    """Points uniform in the complex disc of the given radius."""
    rad = radius * np.sqrt(rng.uniform(size=n))
    return rad * np.exp(2j * np.pi * rng.uniform(size=n))


def random_commuting_normal_contractions(n: int, rng: np.random.Generator):
    """``(U, lam, mu)``: a Haar basis and two eigenvalue lists in the disc of radius ``1 - 1e-3``."""
    return random_unitary(n, rng), random_disc(n, rng), random_disc(n, rng)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_partition(n: int, rng: np.random.Generator) -> list[list[int]]:
    perm = [int(i) for i in rng.permutation(n)]
    cuts = sorted(int(c) for c in rng.choice(np.arange(1, n), size=int(rng.integers(0, n)), replace=False)) if n > 1 else []
    bounds = [0, *cuts, n]
    return [sorted(perm[bounds[i]:bounds[i + 1]]) for i in range(len(bounds) - 1)]


def random_positive_map(n: int, rng: np.random.Generator, unital: bool = True):
    """A positive map on ``M_n`` drawn uniformly over the four kinds.

    ``functional_hs`` draws ``Z >= 0`` normalized to ``tr Z^2 = 1`` when
    ``unital`` is set.
    """
    from .maps import PositiveLinearMap

    kind = ("identity", "compression", "pinching", "functional_hs")[int(rng.integers(4))]
    if kind == "identity":
        return PositiveLinearMap.identity(n)
    if kind == "compression":
        m = int(rng.integers(1, n + 1))
        return PositiveLinearMap.compression(random_isometry(n, m, rng))
    if kind == "pinching":
        return PositiveLinearMap.pinching(random_partition(n, rng), n)
    return PositiveLinearMap.functional_hs(random_psd_factor(n, rng, unital=unital))


def random_psd_factor(n: int, rng: np.random.Generator, unital: bool = False) -> np.ndarray:
    """Random ``Z >= 0`` of random rank; scaled so ``tr Z^2 = 1`` when ``unital``."""
    rank = int(rng.integers(1, n + 1))
    G = ginibre(n, rank, rng)
    Z = as_hermitian(G @ G.conj().T)
    if unital:
        Z = Z / np.sqrt(np.trace(Z @ Z).real)
    return Z

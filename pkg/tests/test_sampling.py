import numpy as np
import pytest

from opineq.linalg import eigvalsh
from opineq.sampling import (random_commuting_normal_contractions, random_commuting_pair, random_isometry,
                             random_psd_in, random_unit_vector, random_unitary, trial_rng)


def test_unitary_basics(rng):
    u = random_unitary(1, rng)
    assert abs(abs(u[0, 0]) - 1) < 1e-14
    U = random_unitary(5, rng)
    assert np.linalg.norm(U.conj().T @ U - np.eye(5)) <= 1e-10 * 5


def test_haar_eigenvalue_arguments_uniform(rng):
    # chi-square on 10 bins of eigenvalue angles at n = 2; Haar angles are
    # not independent but each marginal is uniform
    angles = np.concatenate([np.angle(np.linalg.eigvals(random_unitary(2, rng))) for _ in range(10_000)])
    counts, _ = np.histogram(angles, bins=10, range=(-np.pi, np.pi))
    expected = angles.size / 10
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    assert chi2 < 40  # 9 dof; p < 1e-5 territory


def test_psd_in_examples(rng):
    A = random_psd_in(4, (1, 1 + 2e-3), rng)
    assert np.allclose(A, (1 + 1e-3) * np.eye(4), atol=1.5e-3)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        w = eigvalsh(random_psd_in(n, (0.2, 3.0), rng))
        assert w[0] > 0.2 and w[-1] < 3.0
    a = random_psd_in(1, (2, 5), rng)
    assert 2 < a[0, 0].real < 5


def test_commuting_draws(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        A, B = random_commuting_pair(n, ((0.1, 1), (1, 3)), rng)
        scale = 1 + max(np.linalg.norm(A, 2), np.linalg.norm(B, 2))
        assert np.linalg.norm(A @ B - B @ A, 2) <= 1e-10 * scale
        U, lam, mu = random_commuting_normal_contractions(n, rng)
        assert np.all(np.abs(lam) < 1) and np.all(np.abs(mu) < 1)
        V = random_isometry(n + 2, n, rng)
        assert np.allclose(V.conj().T @ V, np.eye(n), atol=1e-12)
        assert np.linalg.norm(random_unit_vector(n, rng)) == pytest.approx(1)


def test_trial_rng_is_keyed():
    a = trial_rng(42, "cor_3_4", 3, 7).standard_normal(4)
    assert np.array_equal(a, trial_rng(42, "cor_3_4", 3, 7).standard_normal(4))
    for other in (trial_rng(43, "cor_3_4", 3, 7), trial_rng(42, "cor_3_5", 3, 7),
                  trial_rng(42, "cor_3_4", 4, 7), trial_rng(42, "cor_3_4", 3, 8)):
        assert not np.array_equal(a, other.standard_normal(4))

import numpy as np
import pytest

from conftest import random_pd
from opineq.linalg import loewner_leq, matrix_power, operator_norm
from opineq.means import (MeanSpec, has_fixed_weight, parse_mean, power_mean, weighted_arithmetic_mean,
                          weighted_geometric_mean)
from opineq.sampling import random_commuting_pair


def _close(X, Y, rtol=1e-9):
    scale = 1 + max(operator_norm(X), operator_norm(Y))
    return np.linalg.norm(X - Y, 2) <= rtol * scale


def test_geometric_examples(rng):
    A = random_pd(3, rng)
    assert _close(weighted_geometric_mean(A, np.eye(3), 0.5), matrix_power(A, 0.5))
    assert np.allclose(weighted_geometric_mean(np.diag([4.0]), np.diag([9.0]), 0.5), [[6]])
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    for t in (0, 0.3, 1):
        assert _close(weighted_geometric_mean(A, A, t), A)


def test_power_examples(rng):
    A, B = random_pd(3, rng), random_pd(3, rng)
    assert _close(power_mean(A, B, 1, 0.3), 0.7 * A + 0.3 * B)
    assert np.allclose(power_mean(np.diag([1.0]), np.diag([3.0]), -1, 0.5), [[1.5]])
    assert np.allclose(power_mean(np.diag([1.0]), np.diag([4.0]), 0.5, 0.5), [[2.25]])


def test_arithmetic_examples():
    A, B = np.diag([1.0]), np.diag([3.0])
    assert np.allclose(weighted_arithmetic_mean(A, B, 0), A)
    assert np.allclose(weighted_arithmetic_mean(A, B, 1), B)
    assert np.allclose(weighted_arithmetic_mean(A, B, 0.5), [[2]])
    with pytest.raises(ValueError):
        weighted_arithmetic_mean(np.eye(2), np.eye(3))


def test_errors():
    with pytest.raises(ValueError):
        weighted_geometric_mean(np.diag([1.0, 0.0]), np.eye(2))
    with pytest.raises(ValueError):
        power_mean(np.eye(2), np.eye(2), 0.0)
    with pytest.raises(ValueError):
        weighted_geometric_mean(np.eye(2), np.eye(2), 1.5)


def test_commuting_collapse(rng):
    for n in range(1, 6):
        A, B = random_commuting_pair(n, (0.1, 4.0), rng)
        t = rng.uniform()
        wa, Ua = np.linalg.eigh(A)
        # same basis: read B's eigenvalues in A's eigenbasis
        wb = np.real(np.diag(Ua.conj().T @ B @ Ua))
        expected = (Ua * (wa ** (1 - t) * wb ** t)) @ Ua.conj().T
        assert _close(weighted_geometric_mean(A, B, t), expected)


def test_limit_and_endpoints(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        A, B = random_pd(n, rng), random_pd(n, rng)
        t = rng.uniform()
        G = weighted_geometric_mean(A, B, t)
        for r in (1e-4, -1e-4):
            assert _close(power_mean(A, B, r, t), G, 1e-2)
        for mean in (lambda s: weighted_geometric_mean(A, B, s), lambda s: power_mean(A, B, -0.5, s)):
            assert _close(mean(0.0), A)
            assert _close(mean(1.0), B)


def test_dominated_by_arithmetic(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        A, B = random_pd(n, rng), random_pd(n, rng)
        t = rng.uniform()
        ar = weighted_arithmetic_mean(A, B, t)
        for spec in (MeanSpec("geometric", t), MeanSpec("power", t, -1.0), MeanSpec("power", t, 0.5)):
            assert loewner_leq(spec(A, B), ar, 1e-8).holds


def test_mean_spec_validation_and_descriptors():
    with pytest.raises(ValueError):
        MeanSpec("power", 0.5, 0.0)
    with pytest.raises(ValueError):
        MeanSpec("power", 0.5, 1.5)
    with pytest.raises(ValueError):
        MeanSpec("median", 0.5)
    assert parse_mean("geo").descriptor == "geo:0.5"
    assert parse_mean("pow:-1,0.3").r == -1.0 and parse_mean("pow:-1,0.3").t == 0.3
    assert parse_mean("arith:0.25").t == 0.25
    assert parse_mean(parse_mean("pow:-0.5,0.2").descriptor) == parse_mean("pow:-0.5,0.2")
    assert has_fixed_weight("pow:-1,0.3") and not has_fixed_weight("pow:-1")
    with pytest.raises(ValueError):
        parse_mean("harm")

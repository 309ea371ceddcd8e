"""Acceptance criteria 1 to 10, one test each.

Every test records a single PASS/FAIL line; the lines are printed as they
happen and again, sorted, in the pytest terminal summary.
"""
import math
import time

import numpy as np
import pytest

from conftest import record_criterion
from test_inequalities import _equality_cases
from opineq.functions import get_function
from opineq.functions import test_operator_concave as falsify_concave
from opineq.functions import test_operator_decreasing as falsify_decreasing
from opineq.harness import ALL_IDS, SuiteConfig, evaluate_witness, run_suite
from opineq.inequalities import (check_classical_aczel, check_commuting_power_product, check_holder_mean_operator,
                                 check_mean_transfer, check_normal_aczel)
from opineq.linalg import hermitian_eig, loewner_leq, matrix_power, operator_norm
from opineq.means import MeanSpec, power_mean, weighted_arithmetic_mean, weighted_geometric_mean
from opineq.sampling import ginibre, random_commuting_pair, random_psd_in, random_unitary

SWEEP = dict(ineqs=list(ALL_IDS), dims=[1, 2, 3, 4, 5, 6], trials=1000, seed=42, tol=1e-8)


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    report = run_suite(SuiteConfig(**SWEEP))
    return report, time.perf_counter() - t0


def _scale(*mats):
    return 1.0 + max(operator_norm(M) for M in mats)


# 1 -----------------------------------------------------------------------------

def test_c1_eigensolver_accuracy():
    rng = np.random.default_rng(1)
    mats = []
    for n in range(1, 9):
        for _ in range(1000):
            G = ginibre(n, n, rng) * 10 ** rng.uniform(-2, 2)
            mats.append(0.5 * (G + G.conj().T))
    hermitian_eig(mats[10])  # compile outside the clock
    t0 = time.perf_counter()
    decs = [hermitian_eig(A) for A in mats]
    elapsed = time.perf_counter() - t0
    worst = max(np.linalg.norm(A - d.reconstruct()) / (1 + np.linalg.norm(A)) for A, d in zip(mats, decs))
    ok = worst <= 1e-10 and elapsed < 10
    record_criterion(1, "eigensolver reconstruction", ok, f"worst rel err {worst:.2e}, {elapsed:.2f} s for 8000")
    assert ok


# 2 -----------------------------------------------------------------------------

def test_c2_mean_identities():
    rng = np.random.default_rng(2)
    worst = {"A#tA=A": 0.0, "A#I=A^1/2": 0.0, "r=1 is arithmetic": 0.0, "commuting collapse": 0.0}
    for _ in range(500):
        n = int(rng.integers(1, 7))
        A, B = random_psd_in(n, (0.1, 4), rng), random_psd_in(n, (0.1, 4), rng)
        t = float(rng.uniform())
        G = weighted_geometric_mean(A, A, t)
        worst["A#tA=A"] = max(worst["A#tA=A"], np.linalg.norm(G - A, 2) / _scale(G, A))
        G = weighted_geometric_mean(A, np.eye(n), 0.5)
        R = matrix_power(A, 0.5)
        worst["A#I=A^1/2"] = max(worst["A#I=A^1/2"], np.linalg.norm(G - R, 2) / _scale(G, R))
        P, S = power_mean(A, B, 1.0, t), weighted_arithmetic_mean(A, B, t)
        worst["r=1 is arithmetic"] = max(worst["r=1 is arithmetic"], np.linalg.norm(P - S, 2) / _scale(P, S))
        U = random_unitary(n, rng)
        a, b = rng.uniform(0.1, 4, n), rng.uniform(0.1, 4, n)
        Uh = U.conj().T
        G = weighted_geometric_mean((U * a) @ Uh, (U * b) @ Uh, t)
        E = (U * (a ** (1 - t) * b ** t)) @ Uh
        worst["commuting collapse"] = max(worst["commuting collapse"], np.linalg.norm(G - E, 2) / _scale(G, E))
    ok = max(worst.values()) <= 1e-9
    record_criterion(2, "mean identities", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok


# 3 -----------------------------------------------------------------------------

def test_c3_mean_dominance():
    rng = np.random.default_rng(3)
    kinds = [("geometric", None), *[("power", r) for r in (-1.0, -0.5, 0.5, 1.0)]]
    violations, checked, worst = 0, 0, math.inf
    for kind, r in kinds:
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            spec = MeanSpec(kind, t, r)
            for n in range(1, 7):
                for _ in range(500):
                    A, B = random_psd_in(n, (0.1, 4), rng), random_psd_in(n, (0.1, 4), rng)
                    out = loewner_leq(spec(A, B), weighted_arithmetic_mean(A, B, t), 1e-8)
                    checked += 1
                    violations += not out.holds
                    worst = min(worst, out.margin / out.scale)
    ok = violations == 0
    record_criterion(3, "mean dominance", ok, f"{checked} pairs, {violations} violations, min margin/scale {worst:.1e}")
    assert ok


# 4 -----------------------------------------------------------------------------

def test_c4_full_sweep(sweep):
    report, elapsed = sweep
    ok = report.violations == 0 and elapsed < 60 and sorted(report.aggregates) == sorted(ALL_IDS)
    ok = ok and all(a["trials"] == 6000 for a in report.aggregates.values())
    record_criterion(4, "full inequality sweep", ok, f"{report.violations} violations, {elapsed:.1f} s")
    assert ok


# 5 -----------------------------------------------------------------------------
# the oracles below use only the math module on plain floats

def _geo(a, b, t):
    return a ** (1 - t) * b ** t


def _pow(a, b, r, t):
    return a * ((1 - t) + t * (b / a) ** r) ** (1 / r)


def _oracle_lemma(f, a, b, kind, r, t):
    m = (lambda x, y: _geo(x, y, t)) if kind == "geometric" else (lambda x, y: _pow(x, y, r, t))
    return min(f(m(x, y)) - m(f(x), f(y)) for x, y in zip(a, b))


def _oracle_holder_op(f, a, b, p):
    q = p / (p - 1)
    return min(f((x ** p) ** (1 - 1 / q) * (y ** q) ** (1 / q)) - f(x ** p) ** (1 - 1 / q) * f(y ** q) ** (1 / q)
               for x, y in zip(a, b))


def _oracle_power_product(f, a, b, p):
    q = p / (p - 1)
    return min(f(x * y) - f(x ** p) ** (1 / p) * f(y ** q) ** (1 / q) for x, y in zip(a, b))


def _oracle_normal(lam, mu):
    out = math.inf
    for x, y in zip(lam, mu):
        z = y.conjugate() * x
        right = (1 - abs(x) ** 2) * (1 - abs(y) ** 2)
        out = min(out, (1 - z.real) ** 2 - right, (1 - z.imag) ** 2 - right)
    return out


def test_c5_scalar_oracle():
    rng = np.random.default_rng(5)
    fs = [("affine:1", lambda x: 1 - x), ("resolvent:2,1.5", lambda x: 1.5 - 1 / (2 - x))]
    worst = {}
    for ineq in ("lemma_2_1", "thm_2_2_op", "cor_2_5", "cor_3_5"):
        err = 0.0
        for i in range(200):
            n = int(rng.integers(1, 7))
            label, g = fs[i % 2]
            f = get_function(label)
            a = [float(x) for x in rng.uniform(0.02, 0.98, n)]
            b = [float(x) for x in rng.uniform(0.02, 0.98, n)]
            p = 1 + math.exp(rng.uniform(math.log(0.05), math.log(19)))
            q = p / (p - 1)
            if ineq == "lemma_2_1":
                kind, r = ("geometric", None) if i % 3 == 0 else ("power", float(rng.choice([-1, -0.5, 0.5, 1])))
                t = float(rng.uniform())
                out = check_mean_transfer(f, np.diag(a), np.diag(b), MeanSpec(kind, t, r))
                oracle = _oracle_lemma(g, a, b, kind, r, t)
            elif ineq == "thm_2_2_op":
                # A^p and B^q carry the spread, as in the sweep sampler
                a, b = [x ** (1 / p) for x in a], [y ** (1 / q) for y in b]
                out = check_holder_mean_operator(f, np.diag(a), np.diag(b), p)
                oracle = _oracle_holder_op(g, a, b, p)
            elif ineq == "cor_2_5":
                a, b = [x ** (1 / p) for x in a], [y ** (1 / q) for y in b]
                out = check_commuting_power_product(f, np.diag(a), np.diag(b), p)
                oracle = _oracle_power_product(g, a, b, p)
            else:
                lam = [complex(*v) * 0.7 for v in rng.uniform(-1, 1, (n, 2))]
                mu = [complex(*v) * 0.7 for v in rng.uniform(-1, 1, (n, 2))]
                out = check_normal_aczel(np.eye(n), lam, mu)
                oracle = _oracle_normal(lam, mu)
            assert out.verdict == "pass", (ineq, out.skipped_on)
            err = max(err, abs(out.margin - oracle))
        worst[ineq] = err
    ok = max(worst.values()) <= 1e-9
    record_criterion(5, "scalar-oracle equivalence", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok


# 6 -----------------------------------------------------------------------------

def test_c6_equality_witnesses():
    worst, failures = 0.0, []
    for seed in range(25):
        for name, case in _equality_cases(np.random.default_rng(seed)).items():
            out = case()
            rel = abs(out.margin) / out.scale if out.verdict == "pass" else math.inf
            worst = max(worst, rel)
            if rel > 1e-9:
                failures.append(name)
    ok = not failures
    record_criterion(6, "equality witnesses", ok, f"17 cases x 25 seeds, worst |margin|/scale {worst:.1e}"
                     + (f", failing {sorted(set(failures))}" if failures else ""))
    assert ok


# 7 -----------------------------------------------------------------------------

def _direct_aczel(a, b):
    saa = sab = sbb = 0.0
    for i in range(len(a)):
        saa += a[i] * a[i]
        sab += a[i] * b[i]
        sbb += b[i] * b[i]
    left = (1.0 - sab) * (1.0 - sab)
    right = (1.0 - saa) * (1.0 - sbb)
    return left, right, left - right


def test_c7_classical_cross_check():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10_000):
        n = int(rng.integers(1, 11))
        a = [float(x) for x in rng.uniform(0, 1, n)]
        b = [float(x) for x in rng.uniform(0, 1, n)]
        if rng.uniform() < 0.8:  # mostly hypothesis-satisfying, some bypassed
            s = math.sqrt(sum(x * x for x in a)) * 1.01
            a = [x / max(1.0, s) for x in a]
        out = check_classical_aczel(a, b, gate_bypass=True)
        left, right, margin = _direct_aczel(a, b)
        worst = max(worst, abs(out.lhs - left), abs(out.rhs - right), abs(out.margin - margin))
    ok = worst <= 1e-12
    record_criterion(7, "classical Aczel cross-check", ok, f"10^4 vectors, worst abs diff {worst:.1e}")
    assert ok


# 8 -----------------------------------------------------------------------------

def test_c8_falsifier_sensitivity():
    exp_neg, cms, aff = get_function("exp_neg"), get_function("c_minus_sq:17"), get_function("affine:1")
    r_exp = falsify_decreasing(exp_neg, 2, 10_000, rng_seed=0)
    r_cms = falsify_decreasing(cms, 2, 10_000, rng_seed=0)
    c_cms = falsify_concave(cms, 2, 10_000, rng_seed=0)
    d_aff = falsify_decreasing(aff, 2, 10_000, rng_seed=0)
    c_aff = falsify_concave(aff, 2, 10_000, rng_seed=0)
    ok = r_exp.found and r_cms.found and not c_cms.found and not d_aff.found and not c_aff.found
    detail = (f"exp_neg rejected at trial {r_exp.trials}, c-t^2 rejected at trial {r_cms.trials}, "
              f"c-t^2 concave {c_cms.status}, 1-t {d_aff.status}/{c_aff.status}")
    record_criterion(8, "falsifier sensitivity", ok, detail)
    assert ok


# 9 -----------------------------------------------------------------------------

def test_c9_non_vacuous():
    found = {}
    for ineq in ("cor_3_4", "prop_3_7"):
        report = run_suite(SuiteConfig(ineqs=[ineq], dims=[3], trials=1000, seed=42, gate_bypass=True))
        ws = report.witnesses
        genuine = [w for w in ws if evaluate_witness(w).verdict == "violation"]
        found[ineq] = (len(genuine), min((w["trial"] for w in genuine), default=None))
    ok = all(n > 0 and first < 1000 for n, first in found.values())
    record_criterion(9, "gate-bypass violations", ok,
                     ", ".join(f"{k}: {n} violations, first at trial {f}" for k, (n, f) in found.items()))
    assert ok


# 10 ----------------------------------------------------------------------------

def test_c10_determinism(sweep):
    first = sweep[0].dumps()
    second = run_suite(SuiteConfig(**SWEEP)).dumps()
    ok = first == second
    record_criterion(10, "byte-identical reports", ok, f"{len(first)} bytes")
    assert ok

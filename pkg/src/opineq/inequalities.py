"""
Checkable inequalities
======================

Every ``check_*`` function evaluates the hypotheses of one inequality, then
(if they hold, or if ``gate_bypass`` is set) both sides and a signed margin,
and returns a :class:`~opineq.outcome.CheckOutcome`.  Operator inequalities
``L >= R`` report ``lambda_min(L - R)``; scalar ones report ``L - R`` (or
``R - L`` for the two norm bounds, whose natural reading is ``L <= R``).

The stable string identifiers used by the harness are collected in
:data:`INEQUALITIES`.
"""
from __future__ import annotations

import math

import numpy as np

from .functions import ScalarFunction
from .linalg import Interval, _eig, _hermitize, as_hermitian, as_matrix, operator_norm
from .maps import MinorantFunction, PositiveLinearMap, SesquilinearForm, apply_map, is_unital, sesq_eval
from .means import MeanSpec, weighted_geometric_mean
from .norms import UnitarilyInvariantNorm, check_norm_agm, check_norm_product_bound, norm_eval
from .outcome import DEFAULT_TOL, CheckOutcome, Hypothesis, finish, flag, gate, skipped

__all__ = [
    "INEQUALITIES",
    "OPERATOR_INEQUALITIES",
    "check_classical_aczel",
    "check_commuting_contraction_product",
    "check_commuting_power_product",
    "check_form_aczel",
    "check_functional_aczel",
    "check_geomean_aczel",
    "check_holder_mccarthy",
    "check_holder_mean_operator",
    "check_holder_mean_product",
    "check_holder_mean_vector",
    "check_map_aczel",
    "check_mean_transfer",
    "check_norm_aczel",
    "check_normal_aczel",
    "check_sum_power_product",
]

PD_RTOL = 1e-10
UNIT_TOL = 1e-12
# bounds such as "phi(x,x) <= M1^2" hold up to this much round-off
BOUND_TOL = 1e-12
COMMUTE_RTOL = 1e-10


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------

def _from_eig(w, U, vals) -> np.ndarray:
    return _hermitize((U * vals) @ U.conj().T)


def _lam_min(H) -> float:
    return float(_eig(_hermitize(H)).eigenvalues[0])


def _hnorm(H) -> float:
    w = _eig(_hermitize(H)).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))


def _quad(M, xi) -> complex:
    return complex(np.vdot(xi, M @ xi))


def _pd(name, w) -> Hypothesis:
    return Hypothesis(f"{name} positive definite", float(w[0] - PD_RTOL * (1.0 + max(abs(w[0]), abs(w[-1])))))


def _in(name, w, J: Interval) -> Hypothesis:
    return Hypothesis(f"spectrum of {name} in {J}", J.slack(w))


def _unit(xi) -> Hypothesis:
    return Hypothesis("xi unit vector", UNIT_TOL - abs(float(np.linalg.norm(xi)) - 1.0))


def _exponent(p) -> Hypothesis:
    return flag("p > 1", math.isfinite(p) and p > 1)


def _claims(f: ScalarFunction, *names):
    return [flag(f"f {n.replace('_', ' ')}", n in f.claims) for n in names]


def _commute(A, B, scale) -> Hypothesis:
    return Hypothesis("A, B commute", COMMUTE_RTOL * scale - operator_norm(A @ B - B @ A))


def _bound_pair(label_a, slack_a, label_b, slack_b, require):
    slack_a, slack_b = slack_a + BOUND_TOL, slack_b + BOUND_TOL
    if require == "both":
        return [Hypothesis(label_a, slack_a), Hypothesis(label_b, slack_b)]
    if require == "either":
        return [Hypothesis(f"{label_a} or {label_b}", max(slack_a, slack_b))]
    raise ValueError(f"require must be 'both' or 'either', got {require!r}")


def _vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or not np.all(np.isfinite(v)):
        raise ValueError("expected a finite one-dimensional vector")
    return v


def _same_dim(n, *objs):
    for o in objs:
        if np.shape(o)[0] != n:
            raise ValueError(f"dimension mismatch: expected {n}, got {np.shape(o)}")


def _scalar_scale(*vals) -> float:
    return 1.0 + max(abs(v) for v in vals)


def _holder_parts(f, A, B, p, hyps):
    """Shared set-up: ``A^p``, ``B^q``, their ``#_{1/q}`` mean and ``f`` on each."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    _same_dim(A.shape[0], B)
    wa, Ua = _eig(A)
    wb, Ub = _eig(B)
    q = p / (p - 1.0) if p > 1 else math.nan
    hyps += [_exponent(p), _pd("A", wa), _pd("B", wb)]
    parts = {"A": A, "B": B, "q": q}
    if not all(h.satisfied for h in hyps):
        return parts
    wap, wbq = wa ** p, wb ** q
    hyps += [_in("A^p", wap, f.domain), _in("B^q", wbq, f.domain)]
    if min(wap[0], wbq[0]) <= PD_RTOL * (1.0 + max(wap[-1], wbq[-1])):
        # the mean below needs A^p, B^q invertible; not evaluable even under bypass
        hyps.append(Hypothesis("A^p, B^q positive definite", -1.0))
        return parts
    Ap, Bq = _from_eig(wa, Ua, wap), _from_eig(wb, Ub, wbq)
    M = weighted_geometric_mean(Ap, Bq, 1.0 / q)
    wm, Um = _eig(M)
    hyps.append(_in("A^p #_{1/q} B^q", wm, f.domain))
    parts.update(Ap=Ap, Bq=Bq, M=M, wa=wa, Ua=Ua, wb=wb, Ub=Ub, wap=wap, wbq=wbq, wm=wm, Um=Um)
    return parts


# --------------------------------------------------------------------------
# power means and functional calculus
# --------------------------------------------------------------------------

def check_mean_transfer(f: ScalarFunction, A, B, mean: MeanSpec, tol: float = DEFAULT_TOL,
                        gate_bypass: bool = False) -> CheckOutcome:
    """``f(A m B) >= f(A) m f(B)`` for operator decreasing, operator concave ``f``."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    _same_dim(A.shape[0], B)
    wa, Ua = _eig(A)
    wb, Ub = _eig(B)
    J = f.domain
    hyps = [_pd("A", wa), _pd("B", wb), _in("A", wa, J), _in("B", wb, J),
            *_claims(f, "operator_decreasing", "operator_concave", "positive_valued")]
    if not gate(hyps, gate_bypass):
        return skipped("lemma_2_1", hyps)
    M = mean(A, B)
    wm, Um = _eig(M)
    hyps.append(_in("A m B", wm, J))
    if not gate(hyps, gate_bypass):
        return skipped("lemma_2_1", hyps)
    lhs = _from_eig(wm, Um, f.evaluator(wm))
    rhs = mean(_from_eig(wa, Ua, f.evaluator(wa)), _from_eig(wb, Ub, f.evaluator(wb)))
    scale = 1.0 + max(wa[-1], wb[-1], _hnorm(lhs), _hnorm(rhs))
    return finish("lemma_2_1", hyps, lhs, rhs, _lam_min(lhs - rhs), scale, tol)


def check_holder_mean_operator(f: ScalarFunction, A, B, p: float, tol: float = DEFAULT_TOL,
                               gate_bypass: bool = False) -> CheckOutcome:
    """``f(A^p #_{1/q} B^q) >= f(A^p) #_{1/q} f(B^q)`` with ``1/p + 1/q = 1``.

    ``extras["printed_form_margin"]`` evaluates the variant whose left side
    uses ``A`` in place of ``A^p``; it is recorded, never asserted.
    """
    hyps = _claims(f, "operator_decreasing", "operator_concave", "positive_valued")
    s = _holder_parts(f, A, B, float(p), hyps)
    if not gate(hyps, gate_bypass) or "M" not in s:
        return skipped("thm_2_2_op", hyps)
    q, ev = s["q"], f.evaluator
    lhs = _from_eig(s["wm"], s["Um"], ev(s["wm"]))
    rhs = weighted_geometric_mean(_from_eig(s["wa"], s["Ua"], ev(s["wap"])),
                                  _from_eig(s["wb"], s["Ub"], ev(s["wbq"])), 1.0 / q)
    extras = {"printed_form_margin": math.nan}
    M0 = weighted_geometric_mean(s["A"], s["Bq"], 1.0 / q)
    w0, U0 = _eig(M0)
    if f.domain.slack(w0) >= 0:
        extras["printed_form_margin"] = _lam_min(_from_eig(w0, U0, ev(w0)) - rhs)
    scale = 1.0 + max(s["wa"][-1], s["wb"][-1], _hnorm(lhs), _hnorm(rhs))
    return finish("thm_2_2_op", hyps, lhs, rhs, _lam_min(lhs - rhs), scale, tol, extras)


def check_holder_mean_vector(f: ScalarFunction, A, B, p: float, xi, tol: float = DEFAULT_TOL,
                             gate_bypass: bool = False) -> CheckOutcome:
    """``<f(A^p #_{1/q} B^q) xi, xi> >= <f(A^p) xi, xi>^{1/p} <f(B^q) xi, xi>^{1/q}``."""
    xi = _vector(xi)
    hyps = _claims(f, "operator_decreasing", "operator_concave", "positive_valued")
    _same_dim(np.shape(A)[0], xi)
    hyps.append(_unit(xi))
    s = _holder_parts(f, A, B, float(p), hyps)
    if not gate(hyps, gate_bypass) or "M" not in s:
        return skipped("thm_2_2_vec", hyps)
    q, ev = s["q"], f.evaluator
    lhs = _quad(_from_eig(s["wm"], s["Um"], ev(s["wm"])), xi).real
    fa = _quad(_from_eig(s["wa"], s["Ua"], ev(s["wap"])), xi).real
    fb = _quad(_from_eig(s["wb"], s["Ub"], ev(s["wbq"])), xi).real
    rhs = max(fa, 0.0) ** (1.0 / p) * max(fb, 0.0) ** (1.0 / q)
    scale = 1.0 + max(s["wa"][-1], s["wb"][-1], abs(lhs), abs(rhs))
    return finish("thm_2_2_vec", hyps, lhs, rhs, lhs - rhs, scale, tol)


def check_holder_mean_product(f: ScalarFunction, A, B, p: float, xi, tol: float = DEFAULT_TOL,
                              gate_bypass: bool = False) -> CheckOutcome:
    """Two equivalent forms, carried together:

    ``<f(M) xi, xi> >= <f(A^p)^{1/p} xi, xi> <f(B^q)^{1/q} xi, xi>`` and
    ``||f(M)^{1/2} xi|| >= ||f(A^p)^{1/(2p)} xi|| ||f(B^q)^{1/(2q)} xi||``
    with ``M = A^p #_{1/q} B^q``.  The reported margin is the smaller one.
    """
    xi = _vector(xi)
    hyps = _claims(f, "operator_decreasing", "operator_concave", "positive_valued")
    _same_dim(np.shape(A)[0], xi)
    hyps.append(_unit(xi))
    s = _holder_parts(f, A, B, float(p), hyps)
    if not gate(hyps, gate_bypass) or "M" not in s:
        return skipped("remark_2_3", hyps)
    q, ev = s["q"], f.evaluator
    fm = np.maximum(ev(s["wm"]), 0.0)
    fa = np.maximum(ev(s["wap"]), 0.0)
    fb = np.maximum(ev(s["wbq"]), 0.0)
    Um, Ua, Ub = s["Um"], s["Ua"], s["Ub"]
    lhs1 = _quad(_from_eig(s["wm"], Um, fm), xi).real
    rhs1 = _quad(_from_eig(s["wa"], Ua, fa ** (1 / p)), xi).real * _quad(_from_eig(s["wb"], Ub, fb ** (1 / q)), xi).real
    lhs2 = float(np.linalg.norm(_from_eig(s["wm"], Um, np.sqrt(fm)) @ xi))
    rhs2 = (float(np.linalg.norm(_from_eig(s["wa"], Ua, fa ** (0.5 / p)) @ xi))
            * float(np.linalg.norm(_from_eig(s["wb"], Ub, fb ** (0.5 / q)) @ xi)))
    m1, m2 = lhs1 - rhs1, lhs2 - rhs2
    extras = {"inner_margin": m1, "norm_margin": m2, "norm_lhs": lhs2, "norm_rhs": rhs2}
    scale = 1.0 + max(s["wa"][-1], s["wb"][-1], abs(lhs1), abs(rhs1))
    return finish("remark_2_3", hyps, lhs1, rhs1, min(m1, m2), scale, tol, extras)


def check_holder_mccarthy(C, r: float, xi, tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    """``<C xi, xi>^r >= <C^r xi, xi>`` for ``C >= 0``, ``0 < r < 1``, unit ``xi``."""
    C = as_hermitian(C)
    xi = _vector(xi)
    _same_dim(C.shape[0], xi)
    w, U = _eig(C)
    scale_c = 1.0 + max(abs(w[0]), abs(w[-1]))
    r = float(r)
    hyps = [Hypothesis("C positive semidefinite", float(w[0] + PD_RTOL * scale_c)),
            flag("0 < r < 1", 0.0 < r < 1.0), _unit(xi)]
    if not gate(hyps, gate_bypass):
        return skipped("holder_mccarthy", hyps)
    lhs = max(_quad(C, xi).real, 0.0) ** r
    rhs = _quad(_from_eig(w, U, np.maximum(w, 0.0) ** r), xi).real
    return finish("holder_mccarthy", hyps, lhs, rhs, lhs - rhs, max(scale_c, _scalar_scale(lhs, rhs)), tol)


def check_commuting_contraction_product(A, B, p: float, xi, tol: float = DEFAULT_TOL,
                                        gate_bypass: bool = False) -> CheckOutcome:
    """``1 - ||AB xi||^2 >= (1 - ||A^{p/2} xi||^2)^{1/p} (1 - ||B^{q/2} xi||^2)^{1/q}``.

    For commuting ``A, B`` with spectra in ``(0, 1)``.  The weaker left side
    ``1 - <AB xi, xi>`` is kept in ``extras["secondary_margin"]``.
    """
    A = as_hermitian(A)
    B = as_hermitian(B)
    xi = _vector(xi)
    _same_dim(A.shape[0], B, xi)
    wa, Ua = _eig(A)
    wb, Ub = _eig(B)
    unit = Interval.open(0, 1)
    p = float(p)
    scale = 1.0 + max(abs(wa[-1]), abs(wb[-1]), abs(wa[0]), abs(wb[0]))
    hyps = [_exponent(p), _commute(A, B, scale), _pd("A", wa), _pd("B", wb),
            _in("A", wa, unit), _in("B", wb, unit), _unit(xi)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_4", hyps)
    q = p / (p - 1.0)
    ABxi = A @ (B @ xi)
    lhs = 1.0 - float(np.vdot(ABxi, ABxi).real)
    na = float(np.linalg.norm(_from_eig(wa, Ua, np.maximum(wa, 0) ** (p / 2)) @ xi)) ** 2
    nb = float(np.linalg.norm(_from_eig(wb, Ub, np.maximum(wb, 0) ** (q / 2)) @ xi)) ** 2
    rhs = max(1.0 - na, 0.0) ** (1.0 / p) * max(1.0 - nb, 0.0) ** (1.0 / q)
    lhs2 = 1.0 - float(np.vdot(xi, ABxi).real)
    extras = {"secondary_lhs": lhs2, "secondary_margin": lhs2 - rhs}
    return finish("cor_2_4", hyps, lhs, rhs, lhs - rhs, max(scale, _scalar_scale(lhs, rhs)), tol, extras)


def check_commuting_power_product(f: ScalarFunction, A, B, p: float, tol: float = DEFAULT_TOL,
                                  gate_bypass: bool = False) -> CheckOutcome:
    """``f(AB) >= f(A^p)^{1/p} f(B^q)^{1/q}`` for commuting ``A, B``."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    _same_dim(A.shape[0], B)
    wa, Ua = _eig(A)
    wb, Ub = _eig(B)
    p = float(p)
    J = f.domain
    scale = 1.0 + max(abs(wa[-1]), abs(wb[-1]), abs(wa[0]), abs(wb[0]))
    hyps = [_exponent(p), _commute(A, B, scale), _pd("A", wa), _pd("B", wb),
            *_claims(f, "operator_decreasing", "operator_concave", "positive_valued")]
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_5", hyps)
    q = p / (p - 1.0)
    AB = _hermitize(A @ B)
    wab, Uab = _eig(AB)
    wap, wbq = wa ** p, wb ** q
    hyps += [_in("A^p", wap, J), _in("B^q", wbq, J), _in("AB", wab, J)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_5", hyps)
    ev = f.evaluator
    lhs = _from_eig(wab, Uab, ev(wab))
    Fa = _from_eig(wa, Ua, np.maximum(ev(wap), 0.0) ** (1.0 / p))
    Fb = _from_eig(wb, Ub, np.maximum(ev(wbq), 0.0) ** (1.0 / q))
    rhs = _hermitize(Fa @ Fb)
    scale = max(scale, 1.0 + max(_hnorm(lhs), _hnorm(rhs)))
    return finish("cor_2_5", hyps, lhs, rhs, _lam_min(lhs - rhs), scale, tol)


def check_sum_power_product(f: ScalarFunction, a, b, p: float, tol: float = DEFAULT_TOL,
                            gate_bypass: bool = False) -> CheckOutcome:
    """``sum f(a_i b_i) >= (sum f(a_i^p))^{1/p} (sum f(b_i^q))^{1/q}`` for decreasing concave ``f``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape or a.size == 0:
        raise ValueError("a and b must be non-empty vectors of equal length")
    p = float(p)
    hyps = [_exponent(p), Hypothesis("a positive", float(np.min(a))), Hypothesis("b positive", float(np.min(b))),
            *_claims(f, "decreasing", "concave")]
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_6", hyps)
    q = p / (p - 1.0)
    ab, ap, bq = a * b, a ** p, b ** q
    J = f.domain
    hyps += [_in("a*b", ab, J), _in("a^p", ap, J), _in("b^q", bq, J)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_6", hyps)
    fab, fap, fbq = f(ab), f(ap), f(bq)
    hyps.append(Hypothesis("f nonnegative on the evaluated points", float(min(fab.min(), fap.min(), fbq.min()))))
    if not gate(hyps, gate_bypass):
        return skipped("cor_2_6", hyps)
    lhs = float(np.sum(fab))
    rhs = max(float(np.sum(fap)), 0.0) ** (1.0 / p) * max(float(np.sum(fbq)), 0.0) ** (1.0 / q)
    return finish("cor_2_6", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs), tol)


# --------------------------------------------------------------------------
# forms, maps, functionals
# --------------------------------------------------------------------------

def check_form_aczel(form: SesquilinearForm, x, y, M1: float, M2: float, L: MinorantFunction,
                     require: str = "both", tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    """``(M1 M2 - L(phi(x, y)))^2 >= (M1^2 - phi(x, x)) (M2^2 - phi(y, y))``.

    ``require="either"`` gates on only one of the two bounds holding.
    """
    x, y = _vector(x), _vector(y)
    pxx = sesq_eval(form, x, x).real
    pyy = sesq_eval(form, y, y).real
    pxy = sesq_eval(form, x, y)
    M1, M2 = float(M1), float(M2)
    hyps = [flag("M1 > 0", M1 > 0), flag("M2 > 0", M2 > 0),
            *_bound_pair("phi(x,x) <= M1^2", M1 * M1 - pxx, "phi(y,y) <= M2^2", M2 * M2 - pyy, require)]
    if not gate(hyps, gate_bypass):
        return skipped("thm_3_1", hyps)
    lhs = (M1 * M2 - L(pxy)) ** 2
    rhs = (M1 * M1 - pxx) * (M2 * M2 - pyy)
    return finish("thm_3_1", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs, M1 * M2, pxx, pyy), tol)


def _map_quad(phi: PositiveLinearMap, X, xi):
    Y = apply_map(phi, X)
    if phi.is_functional:
        return complex(Y) * float(np.vdot(xi, xi).real), None
    return _quad(Y, xi), Y


def check_map_aczel(phi: PositiveLinearMap, A, B, xi, require: str = "either", level: str = "vector",
                    tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    """``(1 - Re<Phi(B^*A) xi, xi>)^2 >= (1 - <Phi(A^*A) xi, xi>)(1 - <Phi(B^*B) xi, xi>)``.

    ``Phi`` must be unital and positive.  The contraction hypothesis is read
    at the vector level (``<Phi(A^*A) xi, xi> <= 1``) unless
    ``level="operator"`` asks for ``||Phi(A^*A)|| <= 1``.  A functional
    counts as a map into ``M_1``.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    _same_dim(phi.n_in, A, B)
    xi = _vector(xi)
    _same_dim(phi.n_out, xi)
    Ah, Bh = A.conj().T, B.conj().T
    a, PA = _map_quad(phi, Ah @ A, xi)
    b, PB = _map_quad(phi, Bh @ B, xi)
    c, _ = _map_quad(phi, Bh @ A, xi)
    a, b = a.real, b.real
    if level == "vector":
        sa, sb = 1.0 - a, 1.0 - b
    elif level == "operator":
        sa = 1.0 - (a if PA is None else _hnorm(PA))
        sb = 1.0 - (b if PB is None else _hnorm(PB))
    else:
        raise ValueError(f"level must be 'vector' or 'operator', got {level!r}")
    hyps = [flag("Phi unital", is_unital(phi)), flag("Phi positive", phi.kind in
                                                     ("identity", "compression", "pinching", "functional_hs")),
            *_bound_pair("Phi(A*A) contraction", sa, "Phi(B*B) contraction", sb, require), _unit(xi)]
    if not gate(hyps, gate_bypass):
        return skipped("thm_3_2", hyps)
    lhs = (1.0 - c.real) ** 2
    rhs = (1.0 - a) * (1.0 - b)
    extras = {"middle_imag": c.imag}
    return finish("thm_3_2", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs, a, b), tol, extras)


def _functional(psi: PositiveLinearMap):
    if not psi.is_functional:
        raise ValueError(f"expected a functional_hs map, got {psi.kind!r}")


def check_functional_aczel(psi: PositiveLinearMap, A, B, M1: float, M2: float, L: MinorantFunction,
                           require: str = "both", tol: float = DEFAULT_TOL,
                           gate_bypass: bool = False) -> CheckOutcome:
    """``(M1 M2 - L(psi(B^*A)))^2 >= (M1^2 - psi(A^*A)) (M2^2 - psi(B^*B))``."""
    _functional(psi)
    A = as_matrix(A)
    B = as_matrix(B)
    _same_dim(psi.n_in, A, B)
    Ah, Bh = A.conj().T, B.conj().T
    vaa = apply_map(psi, Ah @ A).real
    vbb = apply_map(psi, Bh @ B).real
    vba = apply_map(psi, Bh @ A)
    M1, M2 = float(M1), float(M2)
    hyps = [flag("M1 > 0", M1 > 0), flag("M2 > 0", M2 > 0),
            *_bound_pair("psi(A*A) <= M1^2", M1 * M1 - vaa, "psi(B*B) <= M2^2", M2 * M2 - vbb, require)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_3_3", hyps)
    lhs = (M1 * M2 - L(vba)) ** 2
    rhs = (M1 * M1 - vaa) * (M2 * M2 - vbb)
    return finish("cor_3_3", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs, M1 * M2, vaa, vbb), tol)


def check_classical_aczel(a, b, require: str = "either", tol: float = DEFAULT_TOL,
                          gate_bypass: bool = False) -> CheckOutcome:
    """``(1 - sum a_i b_i)^2 >= (1 - sum a_i^2)(1 - sum b_i^2)`` for positive vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape or a.size == 0:
        raise ValueError("a and b must be non-empty vectors of equal length")
    sa, sb, sab = float(a @ a), float(b @ b), float(a @ b)
    hyps = [Hypothesis("a positive", float(np.min(a))), Hypothesis("b positive", float(np.min(b))),
            *_bound_pair("sum a^2 <= 1", 1.0 - sa, "sum b^2 <= 1", 1.0 - sb, require)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_3_4", hyps)
    lhs = (1.0 - sab) ** 2
    rhs = (1.0 - sa) * (1.0 - sb)
    return finish("cor_3_4", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs), tol)


def check_normal_aczel(U, lam, mu, tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    """``(1 - Re(B^*A))^2 >= (1 - A^*A)(1 - B^*B)`` and the same with ``Im``.

    ``A = U diag(lam) U^*`` and ``B = U diag(mu) U^*``.  Both sides are
    diagonal in the basis ``U``, so the operator margin is the smallest
    per-index scalar margin, taken over both variants.
    """
    U = as_matrix(U)
    lam = _vector(lam)
    mu = _vector(mu)
    n = U.shape[0]
    _same_dim(n, lam, mu)
    hyps = [Hypothesis("U unitary", 1e-10 * n - float(np.linalg.norm(U.conj().T @ U - np.eye(n)))),
            Hypothesis("A contraction", 1.0 - float(np.max(np.abs(lam)))),
            Hypothesis("B contraction", 1.0 - float(np.max(np.abs(mu))))]
    if not gate(hyps, gate_bypass):
        return skipped("cor_3_5", hyps)
    z = np.conj(mu) * lam
    right = (1.0 - np.abs(lam) ** 2) * (1.0 - np.abs(mu) ** 2)
    left_re = (1.0 - z.real) ** 2
    left_im = (1.0 - z.imag) ** 2
    m_re = float(np.min(left_re - right))
    m_im = float(np.min(left_im - right))
    Uh = U.conj().T
    lhs = _hermitize((U * left_re) @ Uh)
    rhs = _hermitize((U * right) @ Uh)
    extras = {"margin_re": m_re, "margin_im": m_im}
    scale = 1.0 + float(max(np.max(np.abs(left_re)), np.max(np.abs(left_im)), np.max(np.abs(right))))
    return finish("cor_3_5", hyps, lhs, rhs, min(m_re, m_im), scale, tol, extras)


def check_geomean_aczel(psi: PositiveLinearMap, A, B, M1: float, M2: float, require: str = "both",
                        tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    """``(M1 M2 - psi(A # B))^2 >= (M1^2 - psi(A)) (M2^2 - psi(B))`` with ``# = #_{1/2}``."""
    _functional(psi)
    A = as_hermitian(A)
    B = as_hermitian(B)
    _same_dim(psi.n_in, A, B)
    wa, _ = _eig(A)
    wb, _ = _eig(B)
    va = apply_map(psi, A).real
    vb = apply_map(psi, B).real
    M1, M2 = float(M1), float(M2)
    hyps = [_pd("A", wa), _pd("B", wb), flag("M1 > 0", M1 > 0), flag("M2 > 0", M2 > 0),
            *_bound_pair("psi(A) <= M1^2", M1 * M1 - va, "psi(B) <= M2^2", M2 * M2 - vb, require)]
    if not gate(hyps, gate_bypass):
        return skipped("cor_3_6", hyps)
    g = apply_map(psi, weighted_geometric_mean(A, B, 0.5))
    lhs = (M1 * M2 - g.real) ** 2
    rhs = (M1 * M1 - va) * (M2 * M2 - vb)
    extras = {"psi_geomean": g.real, "psi_geomean_imag": g.imag}
    return finish("cor_3_6", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs, M1 * M2, va, vb), tol, extras)


def check_norm_aczel(N: UnitarilyInvariantNorm, X, A, B, require: str = "either", tol: float = DEFAULT_TOL,
                     gate_bypass: bool = False) -> CheckOutcome:
    """``(1 - |||A^* X B|||)^2 >= (1 - ||A||^2 |||X|||)(1 - ||B||^2 |||X|||)``.

    Inner ``||A||``, ``||B||`` are operator norms; ``|||.|||`` is ``N``.
    """
    X = as_matrix(X)
    A = as_matrix(A)
    B = as_matrix(B)
    _same_dim(X.shape[0], A, B)
    nx = norm_eval(N, X)
    ka = operator_norm(A) ** 2 * nx
    kb = operator_norm(B) ** 2 * nx
    hyps = _bound_pair("||A||^2 |||X||| <= 1", 1.0 - ka, "||B||^2 |||X||| <= 1", 1.0 - kb, require)
    if not gate(hyps, gate_bypass):
        return skipped("prop_3_7", hyps)
    mid = norm_eval(N, A.conj().T @ X @ B)
    lhs = (1.0 - mid) ** 2
    rhs = (1.0 - ka) * (1.0 - kb)
    extras = {"norm_AXB": mid}
    return finish("prop_3_7", hyps, lhs, rhs, lhs - rhs, _scalar_scale(lhs, rhs, ka, kb), tol, extras)


INEQUALITIES = {
    "lemma_2_1": check_mean_transfer,
    "thm_2_2_op": check_holder_mean_operator,
    "thm_2_2_vec": check_holder_mean_vector,
    "remark_2_3": check_holder_mean_product,
    "holder_mccarthy": check_holder_mccarthy,
    "cor_2_4": check_commuting_contraction_product,
    "cor_2_5": check_commuting_power_product,
    "cor_2_6": check_sum_power_product,
    "thm_3_1": check_form_aczel,
    "thm_3_2": check_map_aczel,
    "cor_3_3": check_functional_aczel,
    "cor_3_4": check_classical_aczel,
    "cor_3_5": check_normal_aczel,
    "cor_3_6": check_geomean_aczel,
    "bound_3_2": check_norm_product_bound,
    "agm_3_3": check_norm_agm,
    "prop_3_7": check_norm_aczel,
}

# identifiers whose margin is a smallest eigenvalue
OPERATOR_INEQUALITIES = ("lemma_2_1", "thm_2_2_op", "cor_2_5", "cor_3_5")

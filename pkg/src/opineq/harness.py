"""
Randomized sweeps over the inequality registry.

Each ``(inequality, dim, trial)`` gets its own generator from
:func:`~opineq.sampling.trial_rng`, so a report depends on the
configuration alone and not on execution order.
"""
from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .functions import ScalarFunction, get_function
from .inequalities import INEQUALITIES
from .linalg import matrix_from_json, matrix_power, matrix_to_json, operator_norm
from .maps import MinorantFunction, PositiveLinearMap, SesquilinearForm, apply_map
from .means import MeanSpec, has_fixed_weight, parse_mean
from .norms import UnitarilyInvariantNorm, norm_eval, parse_norm
from .outcome import DEFAULT_TOL, CheckOutcome
from .sampling import (
    ginibre,
    random_commuting_normal_contractions,
    random_commuting_pair,
    random_positive_map,
    random_psd_factor,
    random_psd_in,
    random_spectrum,
    random_unit_vector,
    trial_rng,
)

__all__ = [
    "ConfigError",
    "SuiteConfig",
    "SuiteReport",
    "decode_inputs",
    "encode_inputs",
    "evaluate",
    "evaluate_witness",
    "run_suite",
    "sample_inputs",
]

ALL_IDS = tuple(INEQUALITIES)
MINORANTS = ("re", "im", "abs", "neg_abs")


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    ineqs: list = field(default_factory=lambda: list(ALL_IDS))
    dims: list = field(default_factory=lambda: [1, 2, 3, 4, 5, 6])
    trials: int = 1000
    seed: int = 42
    tol: float = DEFAULT_TOL
    norms: list = field(default_factory=lambda: ["s1", "s2", "sinf", "kf:2"])
    means: list = field(default_factory=lambda: ["geo", "pow:-1", "pow:-0.5", "pow:0.5", "pow:1", "arith"])
    functions: list = field(default_factory=lambda: ["affine:1", "resolvent:2,1.5"])
    out: str | None = None
    csv: str | None = None
    gate_bypass: bool = False
    max_resamples: int = 100

    def validate(self) -> None:
        if self.ineqs == "all" or self.ineqs == ["all"]:
            self.ineqs = list(ALL_IDS)
        unknown = [i for i in self.ineqs if i not in INEQUALITIES]
        if unknown:
            raise ConfigError(f"unknown inequality id(s): {', '.join(unknown)}")
        if not self.ineqs:
            raise ConfigError("no inequalities selected")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if not self.dims or any(not isinstance(d, int) or not 1 <= d <= 16 for d in self.dims):
            raise ConfigError(f"dims must be integers in 1..16, got {self.dims!r}")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ConfigError(f"tol must be positive, got {self.tol!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must fit in 64 bits")
        try:
            for text in self.norms:
                parse_norm(text)
            for text in self.means:
                parse_mean(text)
            for label in self.functions:
                get_function(label)
        except (ValueError, IndexError) as exc:
            raise ConfigError(str(exc)) from exc
        if not self.norms or not self.means or not self.functions:
            raise ConfigError("norm, mean and function lists must be non-empty")

    def to_json(self) -> dict:
        return {
            "ineqs": list(self.ineqs), "dims": list(self.dims), "trials": self.trials, "seed": int(self.seed),
            "tol": self.tol, "norms": list(self.norms), "means": list(self.means),
            "functions": list(self.functions), "gate_bypass": self.gate_bypass,
        }


# --------------------------------------------------------------------------
# samplers: each returns the keyword arguments of the matching check
# --------------------------------------------------------------------------

def _pick(seq, rng):
    return seq[int(rng.integers(len(seq)))]


def _window(f: ScalarFunction):
    J = f.domain
    if not (math.isfinite(J.lo) and math.isfinite(J.hi)):
        raise ConfigError(f"function {f.label} needs a bounded domain for sampling")
    return J.lo, J.hi


def _exponent(rng) -> float:
    return 1.0 + math.exp(rng.uniform(math.log(0.05), math.log(19.0)))


def _mean(cfg, rng) -> MeanSpec:
    text = _pick(cfg.means, rng)
    if has_fixed_weight(text):
        return parse_mean(text)
    return parse_mean(text, t=float(rng.uniform()))


def _holder_inputs(n, rng, cfg, with_xi):
    f = get_function(_pick(cfg.functions, rng))
    p = _exponent(rng)
    q = p / (p - 1.0)
    window = _window(f)
    A = matrix_power(random_psd_in(n, window, rng), 1.0 / p)
    B = matrix_power(random_psd_in(n, window, rng), 1.0 / q)
    out = {"f": f, "A": A, "B": B, "p": p}
    if with_xi:
        out["xi"] = random_unit_vector(n, rng)
    return out


def _norm(cfg, n, rng) -> UnitarilyInvariantNorm:
    usable = [N for N in map(parse_norm, cfg.norms) if N.applies_to(n)]
    if not usable:
        raise ConfigError(f"no configured norm applies in dimension {n}")
    return _pick(usable, rng)


def _sample_lemma_2_1(n, rng, cfg, violate):
    f = get_function(_pick(cfg.functions, rng))
    window = _window(f)
    return {"f": f, "A": random_psd_in(n, window, rng), "B": random_psd_in(n, window, rng),
            "mean": _mean(cfg, rng)}


def _sample_holder_mccarthy(n, rng, cfg, violate):
    return {"C": random_psd_factor(n, rng), "r": float(rng.uniform(0.01, 0.99)), "xi": random_unit_vector(n, rng)}


def _sample_cor_2_4(n, rng, cfg, violate):
    A, B = random_commuting_pair(n, (0.0, 1.0), rng)
    return {"A": A, "B": B, "p": _exponent(rng), "xi": random_unit_vector(n, rng)}


def _sample_cor_2_5(n, rng, cfg, violate):
    f = get_function(_pick(cfg.functions, rng))
    p = _exponent(rng)
    q = p / (p - 1.0)
    P, Q = random_commuting_pair(n, _window(f), rng)
    return {"f": f, "A": matrix_power(P, 1.0 / p), "B": matrix_power(Q, 1.0 / q), "p": p}


def _sample_cor_2_6(n, rng, cfg, violate):
    f = get_function(_pick(cfg.functions, rng))
    p = _exponent(rng)
    q = p / (p - 1.0)
    window = _window(f)
    u = random_spectrum(n, window, rng)
    v = random_spectrum(n, window, rng)
    return {"f": f, "a": u ** (1.0 / p), "b": v ** (1.0 / q), "p": p}


def _near_boundary(value, rng) -> float:
    # radius with value <= radius^2 <= 1.5 value
    return math.sqrt(value * rng.uniform(1.0, 1.5))


def _sample_thm_3_1(n, rng, cfg, violate):
    form = SesquilinearForm(random_psd_factor(n, rng))
    x = ginibre(n, 1, rng)[:, 0]
    y = ginibre(n, 1, rng)[:, 0]
    return {"form": form, "x": x, "y": y,
            "M1": _near_boundary(form(x, x).real, rng), "M2": _near_boundary(form(y, y).real, rng),
            "L": MinorantFunction(_pick(MINORANTS, rng))}


def _sample_thm_3_2(n, rng, cfg, violate):
    phi = random_positive_map(n, rng, unital=True)
    xi = random_unit_vector(phi.n_out, rng)
    out = {"phi": phi, "xi": xi}
    for name in ("A", "B"):
        X = ginibre(n, n, rng)
        Y = apply_map(phi, X.conj().T @ X)
        level = (complex(Y) * np.vdot(xi, xi)).real if phi.is_functional else np.vdot(xi, Y @ xi).real
        out[name] = X * (rng.uniform(0.3, 1.0) / math.sqrt(level))
    return out


def _sample_cor_3_3(n, rng, cfg, violate):
    psi = PositiveLinearMap.functional_hs(random_psd_factor(n, rng))
    A = ginibre(n, n, rng)
    B = ginibre(n, n, rng)
    return {"psi": psi, "A": A, "B": B,
            "M1": _near_boundary(psi(A.conj().T @ A).real, rng), "M2": _near_boundary(psi(B.conj().T @ B).real, rng),
            "L": MinorantFunction(_pick(MINORANTS, rng))}


def _sample_cor_3_4(n, rng, cfg, violate):
    a = rng.uniform(1e-3, 1.0, n)
    b = rng.uniform(1e-3, 1.0, n)
    if violate:
        a *= math.sqrt(rng.uniform(1.05, 5.0) / float(a @ a))
        b *= math.sqrt(rng.uniform(1.05, 5.0) / float(b @ b))
    else:
        a /= 1.01 * math.sqrt(max(1.0, float(a @ a)))
        b /= 1.01 * math.sqrt(max(1.0, float(b @ b)))
    return {"a": a, "b": b}


def _sample_cor_3_5(n, rng, cfg, violate):
    U, lam, mu = random_commuting_normal_contractions(n, rng)
    return {"U": U, "lam": lam, "mu": mu}


def _sample_cor_3_6(n, rng, cfg, violate):
    psi = PositiveLinearMap.functional_hs(random_psd_factor(n, rng))
    A = random_psd_in(n, (0.1, 4.0), rng)
    B = random_psd_in(n, (0.1, 4.0), rng)
    return {"psi": psi, "A": A, "B": B,
            "M1": _near_boundary(psi(A).real, rng), "M2": _near_boundary(psi(B).real, rng)}


def _sample_norm_triple(n, rng, cfg, violate):
    return {"N": _norm(cfg, n, rng), "A": ginibre(n, n, rng), "X": ginibre(n, n, rng), "B": ginibre(n, n, rng)}


def _sample_prop_3_7(n, rng, cfg, violate):
    N = _norm(cfg, n, rng)
    A, X, B = ginibre(n, n, rng), ginibre(n, n, rng), ginibre(n, n, rng)
    na, nb, nx = operator_norm(A) ** 2, operator_norm(B) ** 2, norm_eval(N, X)
    if violate:
        X = X * (rng.uniform(1.5, 10.0) / (min(na, nb) * nx))
    else:
        X = X * (rng.uniform(0.5, 0.99) / (max(na, nb) * nx))
    return {"N": N, "X": X, "A": A, "B": B}


SAMPLERS = {
    "lemma_2_1": _sample_lemma_2_1,
    "thm_2_2_op": lambda n, rng, cfg, v: _holder_inputs(n, rng, cfg, False),
    "thm_2_2_vec": lambda n, rng, cfg, v: _holder_inputs(n, rng, cfg, True),
    "remark_2_3": lambda n, rng, cfg, v: _holder_inputs(n, rng, cfg, True),
    "holder_mccarthy": _sample_holder_mccarthy,
    "cor_2_4": _sample_cor_2_4,
    "cor_2_5": _sample_cor_2_5,
    "cor_2_6": _sample_cor_2_6,
    "thm_3_1": _sample_thm_3_1,
    "thm_3_2": _sample_thm_3_2,
    "cor_3_3": _sample_cor_3_3,
    "cor_3_4": _sample_cor_3_4,
    "cor_3_5": _sample_cor_3_5,
    "cor_3_6": _sample_cor_3_6,
    "bound_3_2": _sample_norm_triple,
    "agm_3_3": _sample_norm_triple,
    "prop_3_7": _sample_prop_3_7,
}

# samplers that can draw hypothesis-violating inputs under gate bypass
VIOLATING_SAMPLERS = ("cor_3_4", "prop_3_7")


def sample_inputs(ineq_id: str, dim: int, rng: np.random.Generator, cfg: SuiteConfig | None = None,
                  violate: bool = False) -> dict:
    """Draw keyword arguments for ``INEQUALITIES[ineq_id]``."""
    return SAMPLERS[ineq_id](dim, rng, cfg or SuiteConfig(), violate)


def evaluate(ineq_id: str, inputs: dict, tol: float = DEFAULT_TOL, gate_bypass: bool = False) -> CheckOutcome:
    if ineq_id not in INEQUALITIES:
        raise KeyError(f"unknown inequality id {ineq_id!r}")
    return INEQUALITIES[ineq_id](**inputs, tol=tol, gate_bypass=gate_bypass)


# --------------------------------------------------------------------------
# input serialization
# --------------------------------------------------------------------------

def _pairs(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128)]


def encode_inputs(inputs: dict) -> dict:
    """JSON-ready form of a check's keyword arguments."""
    out = {}
    for key, v in inputs.items():
        if isinstance(v, ScalarFunction):
            out[key] = {"function": v.label}
        elif isinstance(v, MeanSpec):
            out[key] = {"mean": v.descriptor}
        elif isinstance(v, PositiveLinearMap):
            out[key] = {"map": v.to_json()}
        elif isinstance(v, SesquilinearForm):
            out[key] = {"form": matrix_to_json(v.G)}
        elif isinstance(v, MinorantFunction):
            out[key] = {"minorant": v.kind}
        elif isinstance(v, UnitarilyInvariantNorm):
            out[key] = {"norm": v.descriptor}
        elif isinstance(v, np.ndarray) and v.ndim == 2:
            out[key] = {"matrix": matrix_to_json(v)}
        elif isinstance(v, np.ndarray) and v.ndim == 1:
            out[key] = {"vector": _pairs(v)}
        elif isinstance(v, (int, float, np.floating, np.integer)):
            out[key] = float(v)
        elif isinstance(v, str):
            out[key] = v
        else:
            raise TypeError(f"cannot serialize input {key!r} of type {type(v).__name__}")
    return out


def _real_if_possible(v: np.ndarray) -> np.ndarray:
    return v.real.copy() if np.all(v.imag == 0) else v


def decode_inputs(obj: dict) -> dict:
    out = {}
    for key, v in obj.items():
        if isinstance(v, dict):
            (tag, payload), = v.items()
            if tag == "function":
                out[key] = get_function(payload)
            elif tag == "mean":
                out[key] = parse_mean(payload)
            elif tag == "map":
                out[key] = PositiveLinearMap.from_json(payload)
            elif tag == "form":
                out[key] = SesquilinearForm(matrix_from_json(payload))
            elif tag == "minorant":
                out[key] = MinorantFunction(payload)
            elif tag == "norm":
                out[key] = parse_norm(payload)
            elif tag == "matrix":
                out[key] = matrix_from_json(payload)
            elif tag == "vector":
                vec = np.array([complex(re, im) for re, im in payload], dtype=np.complex128)
                if not np.all(np.isfinite(vec)):
                    raise ValueError(f"non-finite entries in vector {key!r}")
                out[key] = _real_if_possible(vec) if key in ("a", "b") else vec
            else:
                raise ValueError(f"unknown input tag {tag!r}")
        else:
            out[key] = v
    return out


def evaluate_witness(witness: dict, tol: float | None = None, gate_bypass: bool | None = None) -> CheckOutcome:
    """Re-run a serialized witness (as stored in a report or written by ``check eval``)."""
    tol = witness.get("tol", DEFAULT_TOL) if tol is None else tol
    gate_bypass = witness.get("gate_bypass", False) if gate_bypass is None else gate_bypass
    return evaluate(witness["ineq_id"], decode_inputs(witness["inputs"]), tol=tol, gate_bypass=gate_bypass)


# --------------------------------------------------------------------------
# suite
# --------------------------------------------------------------------------

@dataclass
class TrialRecord:
    ineq_id: str
    dim: int
    trial: int
    verdict: str
    margin: float
    lhs: float
    rhs: float
    scale: float


@dataclass
class SuiteReport:
    config: SuiteConfig
    aggregates: dict
    witnesses: list
    records: list
    wall_time: float = 0.0

    @property
    def violations(self) -> int:
        return sum(a["violations"] for a in self.aggregates.values())

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def to_json(self, include_timing: bool = False) -> dict:
        meta = {"seed": int(self.config.seed), "tol": self.config.tol}
        if include_timing:
            meta["wall_time"] = self.wall_time
        return {
            "metadata": meta,
            "config": self.config.to_json(),
            "inequalities": self.aggregates,
            "violations": self.violations,
            "witnesses": self.witnesses,
        }

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), indent=2, sort_keys=True, allow_nan=False) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["ineq_id", "dim", "trial", "verdict", "margin", "lhs", "rhs", "scale"])
            for r in self.records:
                w.writerow([r.ineq_id, r.dim, r.trial, r.verdict,
                            *(("" if math.isnan(x) else repr(x)) for x in (r.margin, r.lhs, r.rhs, r.scale))])


def _side(v) -> float:
    # matrix-valued sides are summarized by their operator norm
    if v is None:
        return math.nan
    if np.ndim(v) == 2:
        return operator_norm(v)
    return float(np.real(v))


def run_trial(ineq_id: str, dim: int, trial: int, cfg: SuiteConfig):
    """Sample (with up to ``max_resamples`` redraws on hypothesis failure) and evaluate one trial."""
    rng = trial_rng(cfg.seed, ineq_id, dim, trial)
    violate = cfg.gate_bypass and ineq_id in VIOLATING_SAMPLERS
    outcome = inputs = None
    for _ in range(cfg.max_resamples):
        inputs = sample_inputs(ineq_id, dim, rng, cfg, violate)
        outcome = evaluate(ineq_id, inputs, cfg.tol, cfg.gate_bypass)
        if outcome.verdict != "skipped":
            break
    return inputs, outcome


def _summary(margins, counts) -> dict:
    m = np.array(margins, dtype=float)
    return {
        **counts,
        "min_margin": float(m.min()) if m.size else None,
        "median_margin": float(np.median(m)) if m.size else None,
    }


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    cfg.validate()
    start = time.perf_counter()
    records, witnesses, aggregates = [], [], {}
    for ineq_id in cfg.ineqs:
        by_dim = {}
        all_margins = []
        total = {"trials": 0, "passes": 0, "skips": 0, "violations": 0}
        for dim in cfg.dims:
            margins = []
            counts = {"trials": 0, "passes": 0, "skips": 0, "violations": 0}
            for trial in range(cfg.trials):
                inputs, out = run_trial(ineq_id, dim, trial, cfg)
                counts["trials"] += 1
                key = {"pass": "passes", "skipped": "skips", "violation": "violations"}[out.verdict]
                counts[key] += 1
                if out.verdict != "skipped":
                    margins.append(out.margin)
                if out.verdict == "violation":
                    witnesses.append({
                        "ineq_id": ineq_id, "dim": dim, "trial": trial, "margin": out.margin,
                        "scale": out.scale, "tol": cfg.tol, "gate_bypass": cfg.gate_bypass,
                        "inputs": encode_inputs(inputs),
                    })
                records.append(TrialRecord(ineq_id, dim, trial, out.verdict, out.margin,
                                           _side(out.lhs), _side(out.rhs), out.scale))
            by_dim[str(dim)] = _summary(margins, counts)
            all_margins += margins
            for k in total:
                total[k] += counts[k]
        aggregates[ineq_id] = {**_summary(all_margins, total), "by_dim": by_dim}
    report = SuiteReport(cfg, aggregates, witnesses, records, time.perf_counter() - start)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.dumps())
    if cfg.csv:
        report.write_csv(cfg.csv)
    return report

"""
opineq
======

Numerical verification of operator Aczél-type inequalities: operator means,
operator monotone/concave scalar functions, positive linear maps and
unitarily invariant norms, checked on seeded random inputs.

Every check returns a :class:`CheckOutcome` carrying the hypotheses it
tested, both sides, a signed margin (``>= 0`` means the inequality holds)
and a verdict.
"""
from .functions import (PropertyVerdict, ScalarFunction, builtin_affine, builtin_resolvent, get_function,
                        test_operator_concave, test_operator_decreasing)
from .harness import (ConfigError, SuiteConfig, SuiteReport, evaluate, evaluate_witness, run_suite,
                      sample_inputs)
from .inequalities import INEQUALITIES, OPERATOR_INEQUALITIES
from .inequalities import *  # noqa: F401,F403
from .linalg import (ConvergenceError, DomainError, Interval, apply_scalar_function, eigvalsh,
                     functional_calculus, hermitian_eig, loewner_leq, matrix_power, operator_norm,
                     singular_values)
from .maps import MinorantFunction, PositiveLinearMap, SesquilinearForm, apply_map, check_positivity
from .means import MeanSpec, parse_mean, power_mean, weighted_arithmetic_mean, weighted_geometric_mean
from .norms import UnitarilyInvariantNorm, check_norm_agm, check_norm_product_bound, norm_eval, parse_norm
from .outcome import CheckOutcome, Hypothesis
from .sampling import random_psd_in, random_unitary, trial_rng

__version__ = "0.1.0"

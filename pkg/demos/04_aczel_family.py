"""
Aczel-type inequalities, one instance each
==========================================

Each check returns the hypotheses it tested, both sides and a signed
margin.  Operator inequalities report the smallest eigenvalue of
``lhs - rhs``.
"""
import math

import numpy as np

from opineq import (MeanSpec, MinorantFunction, PositiveLinearMap, SesquilinearForm, get_function,
                    check_classical_aczel, check_form_aczel, check_geomean_aczel, check_holder_mccarthy,
                    check_holder_mean_operator, check_map_aczel, check_mean_transfer, check_normal_aczel)

f = get_function("affine:1")


def show(out):
    # operator sides are shown by their diagonals
    lhs, rhs = (np.round(np.real(v if np.ndim(v) == 0 else np.diag(v)), 5) for v in (out.lhs, out.rhs))
    print(f"{out.ineq_id:<16} {out.verdict:<8} margin {out.margin:+.5f}   lhs {lhs}   rhs {rhs}")


# %%
# Means and decreasing concave functions
show(check_mean_transfer(f, np.diag([0.25]), np.diag([0.81]), MeanSpec("geometric", 0.5)))
show(check_holder_mean_operator(f, np.diag([0.6, 0.3]), np.diag([0.5, 0.7]), 2.0))
show(check_holder_mccarthy(np.diag([1.0, 4.0]), 0.5, np.array([1, 1]) / math.sqrt(2)))

# %%
# The classical inequality and its lifts to forms, maps and functionals
show(check_classical_aczel([0.6, 0.3], [0.5, 0.4]))
show(check_form_aczel(SesquilinearForm(np.eye(2)), [0.5, 0], [0, 0.5], 1, 1, MinorantFunction("re")))
show(check_map_aczel(PositiveLinearMap.identity(1), [[0.6]], [[0.8]], [1.0]))
show(check_normal_aczel(np.eye(1), [0.8j], [0.8]))
trace = PositiveLinearMap.functional_hs(np.eye(2))
show(check_geomean_aczel(trace, np.diag([1.0, 4.0]), np.diag([4.0, 1.0]), math.sqrt(6), math.sqrt(6)))

# %%
# Hypotheses gate the verdict: with both sums of squares above 1 the check
# is skipped, and bypassing the gate exposes a genuine failure
out = check_classical_aczel([1.5, 0.0], [0.0, 1.5])
print(out.verdict, "on", out.skipped_on)
show(check_classical_aczel([1.5, 0.0], [0.0, 1.5], gate_bypass=True))

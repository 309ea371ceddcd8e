"""
Searching for counterexamples to operator monotonicity
======================================================

Decreasing and concave as scalar functions is not enough: the operator
versions are strictly stronger.  The falsifiers sample ordered pairs and
convex combinations and report the first failure they find.
"""
from opineq.functions import get_function
from opineq.functions import test_operator_concave as falsify_concave
from opineq.functions import test_operator_decreasing as falsify_decreasing
from opineq.linalg import matrix_from_json

# %%
# 1 - t survives both searches
f = get_function("affine:1")
print(f.label, falsify_decreasing(f, 3, 2000).status, falsify_concave(f, 3, 2000).status)

# %%
# exp(-t) is decreasing on the line but not operator decreasing
v = falsify_decreasing(get_function("exp_neg"), 2, 10_000)
print("exp_neg:", v.status, "after", v.trials, "trials, margin", v.witness["margin"])
print("B <= A with exp(-A) not <= exp(-B), A =\n", matrix_from_json(v.witness["A"]).round(4))

# %%
# 17 - t^2 separates the two properties: t^2 is operator convex, so this is
# operator concave, yet t^2 is not operator monotone
g = get_function("c_minus_sq:17")
print("c_minus_sq decreasing:", falsify_decreasing(g, 2, 10_000).status)
print("c_minus_sq concave:   ", falsify_concave(g, 2, 10_000).status)

# %%
# In one dimension scalar properties are all there is
print("t^2 concave at dim 1:", falsify_concave(get_function("square"), 1, 100).status)
print("exp_neg decreasing at dim 1:", falsify_decreasing(get_function("exp_neg"), 1, 2000).status)

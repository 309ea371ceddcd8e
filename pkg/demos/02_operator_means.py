"""
Operator means
==============

The weighted geometric mean, the power means between it and the arithmetic
mean, and how they sit below the arithmetic mean in the Loewner order.
"""
import numpy as np

from opineq.linalg import loewner_leq
from opineq.means import MeanSpec, power_mean, weighted_arithmetic_mean, weighted_geometric_mean
from opineq.sampling import random_psd_in

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# %%
# Commuting scalars collapse to the familiar formulas
print(weighted_geometric_mean(np.diag([4.0]), np.diag([9.0]), 0.5))   # sqrt(36)
print(power_mean(np.diag([1.0]), np.diag([3.0]), -1, 0.5))           # harmonic mean 1.5

# %%
# For non-commuting A, B the means are genuinely matrix-valued
A = random_psd_in(3, (0.1, 4), rng)
B = random_psd_in(3, (0.1, 4), rng)
print("A # B\n", weighted_geometric_mean(A, B, 0.5))

# %%
# Every mean in the family is dominated by the arithmetic mean.  The margin
# is the smallest eigenvalue of (1-t)A + tB - m_t(A, B).
for spec in [MeanSpec("geometric", 0.3), *[MeanSpec("power", 0.3, r) for r in (-1, -0.5, 0.5, 1)]]:
    out = loewner_leq(spec(A, B), weighted_arithmetic_mean(A, B, 0.3))
    print(f"{spec.descriptor:>12}  margin {out.margin:.3e}")

# %%
# As r -> 0 the power mean approaches the geometric mean
G = weighted_geometric_mean(A, B, 0.3)
for r in (0.5, 0.1, 1e-2, 1e-4):
    print(f"r={r:<6} ||pow - geo|| = {np.linalg.norm(power_mean(A, B, r, 0.3) - G, 2):.2e}")

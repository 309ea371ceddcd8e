"""
Unitarily invariant norms
=========================

Schatten and Ky Fan norms from singular values, and the three norm
inequalities built on them.
"""
import numpy as np

from opineq import check_norm_aczel, check_norm_agm, check_norm_product_bound, parse_norm
from opineq.sampling import ginibre, random_unitary

rng = np.random.default_rng(3)
X = ginibre(4, 4, rng)
U, V = random_unitary(4, rng), random_unitary(4, rng)

# %%
# Every norm ignores unitary factors on either side
for d in ("s1", "s2", "sinf", "kf:2", "sp:3"):
    N = parse_norm(d)
    print(f"{d:>5}  N(X) = {N(X):.6f}   N(UXV) = {N(U @ X @ V):.6f}")

# %%
# |||AXB||| <= ||A|| |||X||| ||B|||  and  |||A^*XB||| <= |||AA^*X + XBB^*||| / 2
A, B = ginibre(4, 4, rng), ginibre(4, 4, rng)
for d in ("s1", "kf:2"):
    N = parse_norm(d)
    p, g = check_norm_product_bound(N, A, X, B), check_norm_agm(N, A, X, B)
    print(f"{d:>5}  product bound margin {p.margin:.4f}   AM-GM margin {g.margin:.4f}")

# %%
# The norm form of the Aczel inequality, after scaling X into the hypothesis
N = parse_norm("s2")
A, B = A / np.linalg.norm(A, 2), B / np.linalg.norm(B, 2)
out = check_norm_aczel(N, 0.9 * X / N(X), A, B)
print(out.verdict, f"margin {out.margin:.5f}", [(h.name, round(h.slack, 4)) for h in out.hypotheses])

"""
Spectral calculus with the Jacobi eigensolver
=============================================

Eigendecomposition, f(A), fractional powers and the Loewner order on small
Hermitian matrices.
"""
import numpy as np

from opineq.linalg import Interval, apply_scalar_function, hermitian_eig, loewner_leq, matrix_power

np.set_printoptions(precision=5, suppress=True)

# %%
# A Hermitian matrix with a complex off-diagonal entry
A = np.array([[2.0, 1 - 1j], [1 + 1j, 3.0]])
dec = hermitian_eig(A)
print("eigenvalues", dec.eigenvalues)
print("reconstruction error", np.linalg.norm(A - dec.reconstruct()))

# %%
# f(A) = U diag(f(lambda)) U^*, with the spectrum checked against the domain
B = np.array([[0.5, 0.1], [0.1, 0.5]])
print("I - B via functional calculus\n", apply_scalar_function(B, lambda t: 1 - t, Interval.open(0, 1)))

# %%
# Square roots and inverse square roots
S = matrix_power(A, 0.5)
R = matrix_power(A, -0.5)
print("S @ S - A\n", S @ S - A)
print("R A R\n", R @ A @ R)

# %%
# A <= B exactly when the smallest eigenvalue of B - A is non-negative
out = loewner_leq(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([[2.0, 1.0], [1.0, 1.0]]))
print(f"holds={out.holds} margin={out.margin:.3g}")

# The order is not total: neither of these dominates the other
print(loewner_leq(np.diag([2.0, 0.0]), np.diag([1.0, 1.0])).holds,
      loewner_leq(np.diag([1.0, 1.0]), np.diag([2.0, 0.0])).holds)

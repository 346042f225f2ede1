"""
The Cesaro operator and its semigroup on coefficients
=====================================================

Truncated matrices of the Cesaro operator C, the composition semigroup
C_{phi_t} it is built from, and the algebraic identities tying them together.
"""

import numpy as np

from cesarolab import hardy, semigroup

np.set_printoptions(precision=4, suppress=True, linewidth=100)

# C averages Taylor coefficients: row n of the matrix is constant 1/(n+1)
C = hardy.cesaro_matrix(4)
print("Cesaro matrix, N = 4")
print(C.entries.real)

# f(z) = 1/(1-z) has all coefficients 1, and so does its Cesaro mean
f = hardy.CoeffVector(np.ones(9))
print("C applied to 1/(1-z):", hardy.apply_cesaro(f).coeffs.real)

# composition with phi_t(z) = e^{-t} z / ((e^{-t} - 1) z + 1) is upper-triangular
Ct = semigroup.composition_matrix(1.0, 5)
print("\ncomposition matrix at t = 1, top-left block")
print(Ct.entries.real[:4, :4])
print("semigroup law residual, t = 0.3 + 0.7:", semigroup.semigroup_law_residual(0.3, 0.7, 64))

# generator A, T = (A - I)^{-1} = -C*, cogenerator V = I + 2T
N = 128
I = hardy.identity(N)
A, T = semigroup.generator_matrix(N), semigroup.resolvent_T_matrix(N)
V = semigroup.cogenerator_matrix(N)
print("\n|(A - I) T - I|   =", hardy.matmul(A - I, T).max_abs_diff(I))
print("|V - I + 2 C*|     =", np.max(np.abs((V - I + 2.0 * hardy.cesaro_adjoint_matrix(N)).entries)))

# the adjoint semigroup is a weighted composition operator
for t in (0.1, 1.0, 5.0):
    d = semigroup.adjoint_composition_matrix(t, 64).max_abs_diff(semigroup.composition_matrix(t, 64).H)
    print(f"t = {t}: |adjoint formula - conjugate transpose| = {d:.1e}")

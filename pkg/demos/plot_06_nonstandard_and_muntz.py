"""
A non-standard invariant subspace and a Muntz-type estimate
===========================================================

Functions equal to a multiple of e^{conj(lam) y} below T form a shift
invariant subspace that is not of the form L^2((a, inf), w).  Its twisted
Laplace transform lands on a reproducing kernel of the half-plane.
"""

import numpy as np

from cesarolab import invariant, line_model

lam = 1 + 1j
cert = invariant.nonstandard_subspace_certificate(lam, T=0.0)
print(cert["subspace"], "->", "pass" if cert["pass"] else "FAIL")
for c in cert["checks"]:
    print(f"  {c['name']:40s} {c['residual']:.2e}")

gen = invariant.ShiftSubspace(0.0, lam).generator()
for s in (0.5, 1 + 2j, 3 - 1j):
    got = invariant.twisted_laplace(gen, s)
    print(f"s = {s}: transform {got:.6f}  kernel {1 / (s + lam.conjugate()):.6f}")

# finite Blaschke products and their model-space kernels
zeros = invariant.SpectralData(((1 + 1j, 2), (2.0, 1)))
print("\nmodel space certificate:", invariant.model_space_certificate(zeros)["pass"])

# how much of e_{n^2} survives restriction to (-inf, 0)
print("\n n  lambda   |e|_(-inf,0) / |e|")
for n, lam_n, r in line_model.muntz_ratio_table(6):
    print(f"{n:2d}  {lam_n:6g}   {r:.3e}")

print("\nlower bound of the restriction on span{e_1,...,e_{n^2}}:")
for n, v in invariant.finite_closedness_demo(4):
    print(f"  n = {n}: {v:.3e}")

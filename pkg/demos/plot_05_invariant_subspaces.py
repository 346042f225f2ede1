"""
Invariant subspaces in both models
==================================

Finite spans of exponential monomials are shift invariant on the line, and
spans of generalized eigenvectors (1-z)^{-gamma} log^k(1/(1-z)) are
invariant for C* on the disc.  Two distinct exponentials already give
incomparable invariant subspaces, so the lattice is not a chain.
"""

import json

from cesarolab import invariant

# line side: span of e^{lam y}, y e^{lam y}
cert = invariant.line_shift_certificate(invariant.SpectralData.single(1 + 1j, 2))
print("line span certificate passes:", cert["pass"])

# disc side, generalized eigenvectors with the top coefficients reported
cert = invariant.verify_cesaro_coinvariance(0.3, 2, 256, window=16)
print("disc span certificate passes:", cert["pass"], " excluded band:", cert["excluded_band"])
for c in cert["checks"]:
    print(f"  {c['name']:45s} {c['residual']:.1e}")

# two exponentials, two incomparable subspaces
cert = invariant.non_unicellularity_certificate(1, 2)
print("\nnon-unicellularity certificate passes:", cert["pass"])
for c in cert["checks"]:
    print(f"  {c['name']:45s} {c['residual']:.3e}")

# certificates are plain JSON
print(json.dumps(json.loads(invariant.certificate_json(cert))["checks"][-1]))

"""
How fast the truncated norms approach e^{t/2}
=============================================

The composition semigroup has norm e^{t/2} on the Hardy space.  Largest
singular values of growing truncations climb toward that value from below.
"""

import math

from cesarolab import semigroup

orders = [32, 64, 128, 256, 512]
for t in (0.5, 1.0, 2.0):
    print(f"t = {t}   e^(t/2) = {math.exp(t / 2):.6f}")
    for N, sigma, ratio in semigroup.norm_convergence_curve(t, orders):
        print(f"  N = {N:4d}   sigma = {sigma:.6f}   ratio = {ratio:.4f}")

# convergence is slow (roughly like 1 - c/N), so the truncation never reaches
# the bound but never exceeds it either

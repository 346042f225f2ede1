"""
The weighted line model
=======================

Through a Mellin-type unitary and a weight conjugation, the composition
semigroup becomes the right shift on L^2(R, w) with w(y) = e^{-2(e^y - 1)}.
"""

import math

import numpy as np

from cesarolab import line_model as lm

print("w(0) =", lm.weight_eval(0.0), "  w(1) =", round(lm.weight_eval(1.0), 5),
      "  w(-20) - e^2 =", lm.weight_eval(-20.0) - math.e**2)

# a coarse look at the weight profile
y, w = lm.weight_profile_rows(-6, 3, 1.0)
for a, b in zip(y, w):
    print(f"  y = {a:5.1f}   w = {b:.4e}")

# intertwining, checked pointwise on random probes
probes = np.random.default_rng(0).uniform(-10, 5, 1000)
for f in (lm.ExpMonomial(1 + 1j, 2), lm.Window(0.0, 1.0)):
    worst = max(lm.verify_intertwining(t, f, probes) for t in (0.1, 1.0, 3.0))
    print(f"{f!r}: intertwining residual {worst:.1e}")

# exponentials are in the space for Re lam > 0; their norms have closed forms
for lam in (1, 2, 4):
    print(f"|e_{lam}|^2 on (-inf, 0) = {lm.weighted_norm_sq(lm.ExpMonomial(lam), interval=(-math.inf, 0)):.6f}")

# the weight sits on the borderline of Domar's non-standardness condition
ind = lm.domar_nonstandard_indicator(lm.CANONICAL, [-5.0, -50.0, -500.0, -5000.0])
print("\nlog w(y) / |y| as y -> -inf:", [round(r, 5) for r in ind["ratio"]])

"""
Fractional powers of the Cesaro operator
========================================

C^beta from the Laplace-type integral of the composition semigroup.  The
closed-form entries are an alternating binomial sum that cancels badly away
from the diagonal; the quadrature route does not cancel at all.
"""

import numpy as np

from cesarolab import fractional, hardy
from cesarolab.errors import CancellationError

N = 64
half = fractional.frac_cesaro_matrix(0.5, N, "integral")
one = fractional.frac_cesaro_matrix(1.0, N, "integral")
print("|M_1 - C|           =", one.max_abs_diff(hardy.cesaro_matrix(N)))
print("|M_1/2 M_1/2 - M_1| =", hardy.matmul(half, half).max_abs_diff(one))

# square root of the resolvent at another shift: B^2 = (lam - A)^{-1}
B = fractional.square_root_matrix(2.0, N)
R = fractional.resolvent_power_matrix(1.0, N, 2.0, "integral")
print("|B^2 - (2 - A)^{-1}| =", hardy.matmul(B, B).max_abs_diff(R))

# the direct sum carries an error bound per entry
values, bounds = fractional.alternating_sum_entries(0.5, N)
offsets = np.subtract.outer(np.arange(N + 1), np.arange(N + 1))
print("\noffset   worst direct-sum bound")
for m in (0, 8, 16, 24, 32, 40, 48):
    print(f"{m:6d}   {np.max(bounds[offsets == m]):.1e}")

for m in (16, 24, 32):
    diff, bound = fractional.method_agreement(0.5, N, m)
    print(f"i - j <= {m}: direct vs integral {diff:.1e} (bound {bound:.1e})")

# asking the direct sum for more than it can deliver is an error, not a wrong answer
try:
    fractional.frac_cesaro_matrix(0.5, N, "direct-sum", tolerance=1e-10)
except CancellationError as exc:
    print("\ndirect-sum refused:", exc)

# 'auto' keeps the direct sum near the diagonal and switches far diagonals to quadrature
auto = fractional.frac_cesaro_matrix(0.5, N)
print("|auto - integral| =", auto.max_abs_diff(half))

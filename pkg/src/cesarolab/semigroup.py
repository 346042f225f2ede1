"""Composition semigroup of phi_t(z) = e^{-t} z + 1 - e^{-t} on H^2.

Everything here is exact on the truncated space up to rounding: the
composition operators, the generator A f = (1-z) f', the resolvent
T = (A - I)^{-1} and the cogenerator V = (A + I)(A - I)^{-1} all map
polynomials of degree <= N to polynomials of degree <= N.

The resolvent sign convention used throughout is

    (I - A)^{-1} = int_0^inf e^{-t} C_{phi_t} dt = C*,

equivalently T = (A - I)^{-1} = -C*.  Direct evaluation of the Laplace
integral entry by entry (see :func:`cesarolab.quadrature.laplace_resolvent_entry`)
gives +1/(n+1), which fixes the sign.

Norms are only computed on H^2: ||C_{phi_t}|| = e^{t/2}.  The H^p analogue
e^{t/p} is outside the scope of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import ConvergenceError
from .hardy import OperatorMatrix, cesaro_adjoint_matrix, identity, matmul


@dataclass(frozen=True)
class FlowParams:
    """Time parameter of the flow and the derived normal-form quantities."""

    t: float

    def __post_init__(self):
        if not self.t >= 0:
            raise ValueError(f"semigroup time must be non-negative, got {self.t}")

    @property
    def contraction(self) -> float:
        """e^{-t}, the multiplier of z in phi_t."""
        return math.exp(-self.t)

    @property
    def offset(self) -> float:
        """1 - e^{-t}, evaluated without cancellation for small t."""
        return -math.expm1(-self.t)

    @property
    def a(self) -> float:
        return math.exp(-self.t / 2)

    @property
    def b(self) -> float:
        return self.offset / self.a

    def phi(self, z):
        return self.contraction * np.asarray(z) + self.offset


def _check_time(t):
    return FlowParams(float(t))


def composition_matrix(t: float, N: int) -> OperatorMatrix:
    """Matrix of C_{phi_t}: entries[n, m] = C(m, n) e^{-nt} (1-e^{-t})^{m-n}.

    Column m holds the coefficients of phi_t(z)^m, built by multiplying
    column m-1 by phi_t(z).  All terms are non-negative, so the recursion is
    stable (relative error O(m eps)).
    """
    flow = _check_time(t)
    p, q = flow.contraction, flow.offset
    M = np.zeros((N + 1, N + 1))
    M[0, 0] = 1.0
    for m in range(1, N + 1):
        prev = M[:m, m - 1]
        M[:m, m] = q * prev
        M[1 : m + 1, m] += p * prev
    return OperatorMatrix(M.astype(complex), "upper-triangular")


def semigroup_law_residual(t1: float, t2: float, N: int) -> float:
    """max |C_{t1} C_{t2} - C_{t1+t2}| over the truncation."""
    lhs = matmul(composition_matrix(t1, N), composition_matrix(t2, N))
    return lhs.max_abs_diff(composition_matrix(t1 + t2, N))


def generator_matrix(N: int) -> OperatorMatrix:
    """A z^n = n z^{n-1} - n z^n (upper bidiagonal, exact on polynomials)."""
    n = np.arange(N + 1, dtype=float)
    M = np.diag(-n) + np.diag(n[1:], 1)
    return OperatorMatrix(M.astype(complex), "bidiagonal" if N > 0 else None)


def resolvent_T_matrix(N: int) -> OperatorMatrix:
    """T = (A - I)^{-1}: T z^n = -(1 + z + ... + z^n)/(n+1)."""
    return -cesaro_adjoint_matrix(N)


def cogenerator_matrix(N: int) -> OperatorMatrix:
    """V = (A + I)(A - I)^{-1} = I + 2T."""
    return identity(N) + 2.0 * resolvent_T_matrix(N)


def adjoint_composition_matrix(t: float, N: int) -> OperatorMatrix:
    """Matrix of C_{phi_t}^* from its weighted-composition form.

    C_{phi_t}^* f(z) = g(z) f(sigma(z)) with g(z) = 1/(1 - (1-e^{-t}) z) and
    sigma(z) = e^{-t} z / (1 - (1-e^{-t}) z), so the image of z^m is
    g(z) sigma(z)^m.  Column m is obtained from column m-1 by multiplying the
    power series by sigma, i.e. dividing by (1 - q z) (a first-order
    recursion) and shifting by one degree with factor e^{-t}.
    """
    flow = _check_time(t)
    p, q = flow.contraction, flow.offset
    M = np.zeros((N + 1, N + 1))
    M[:, 0] = q ** np.arange(N + 1)
    for m in range(1, N + 1):
        y = lfilter([1.0], [1.0, -q], M[:, m - 1])
        M[1:, m] = p * y[:-1]
    return OperatorMatrix(M.astype(complex), "lower-triangular")


def power_iteration_norm(M, tol: float = 1e-14, maxiter: int = 100_000, x0=None):
    """Largest singular value of ``M`` by power iteration on M^H M.

    Returns ``(sigma, iterations)``.  The estimate is a Rayleigh quotient,
    hence never exceeds the true largest singular value.  Iteration stops
    once the relative change of sigma^2 between steps is below ``tol``.

    Raises
    ------
    ConvergenceError
        If ``maxiter`` steps do not reach ``tol``.
    """
    M = np.asarray(M)
    x = np.ones(M.shape[1], dtype=M.dtype) if x0 is None else np.asarray(x0, dtype=M.dtype)
    x = x / np.linalg.norm(x)
    rho = 0.0
    change = math.inf
    for it in range(1, maxiter + 1):
        y = M @ x
        z = M.conj().T @ y
        rho_new = float(np.vdot(y, y).real)
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return 0.0, it
        x = z / nz
        change = abs(rho_new - rho) / max(rho_new, np.finfo(float).tiny)
        rho = rho_new
        if change < tol:
            return math.sqrt(rho), it
    raise ConvergenceError(
        f"power iteration did not converge in {maxiter} steps (relative change {change:.2e})",
        estimate=math.sqrt(rho),
        iterations=maxiter,
    )


def operator_norm_truncation(t: float, N: int, tol: float = 1e-14, maxiter: int = 100_000) -> float:
    """Norm of the (N+1)x(N+1) compression of C_{phi_t}.

    Compressions of a bounded operator have norms that increase with N
    towards the operator norm, here e^{t/2}.
    """
    M = composition_matrix(t, N).entries.real
    sigma, _ = power_iteration_norm(M, tol=tol, maxiter=maxiter)
    return sigma


def norm_convergence_curve(t: float, orders=(32, 64, 128, 256, 512)):
    """Rows (N, sigma_N, sigma_N / e^{t/2}) for a sequence of truncations."""
    bound = math.exp(t / 2)
    rows = []
    for N in orders:
        s = operator_norm_truncation(t, N)
        rows.append((N, s, s / bound))
    return rows

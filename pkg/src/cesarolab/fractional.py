"""Fractional powers of the Cesaro operator through the composition semigroup.

With T(t) = C_{phi_t} and generator A, the Laplace-type integral

    (lam - A)^{-beta} = Gamma(beta)^{-1} int_0^inf t^{beta-1} e^{-lam t} T(t) dt

defines the resolvent powers.  In the coefficient convention of
:mod:`cesarolab.hardy` this operator is upper-triangular (T(t) is); this module
returns its transpose, the lower-triangular matrix

    M[i, j] = C(i, j) sum_{k=0}^{i-j} (-1)^k C(i-j, k) (lam + j + k)^{-beta},

which at lam = 1 is the matrix of C^beta (at beta = 1 it is the Cesaro
matrix itself).  Lower-triangular truncations multiply exactly, so
M_a M_b - M_{a+b} only measures entry accuracy.

Three evaluation methods are available:

``direct-sum``
    The alternating sum evaluated term by term with exact integer binomials,
    double-double powers and double-double accumulation.  Cancellation grows
    like C(i, j) 2^{i-j} (j+1)^{-beta} relative to the result, so every entry
    carries an a-priori error bound; entries whose bound exceeds the
    tolerance are reported through :class:`CancellationError`.
``integral``
    Double-exponential quadrature of the positive integrand
    C(i, j) t^{beta-1} e^{-(lam+j)t} (1-e^{-t})^{i-j} / Gamma(beta).
``extended-precision``
    The alternating sum in mpmath with working precision sized from the
    largest term magnitude.

``auto`` (the default) takes the direct sum wherever its bound meets the
tolerance and the integral elsewhere.

Re(lam) > 1/2 is required: ||T(t)|| = e^{t/2} on H^2, so the Laplace
integral diverges for Re(lam) <= 1/2.  Whether C^beta is bounded on H^2 is
not addressed; truncations are computed regardless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import gammaln, loggamma

from ._ddsum import DD_EPS, dd_add, dd_mul, int_to_dd
from .errors import CancellationError, QuadratureError
from .hardy import OperatorMatrix, matmul
from .quadrature import QuadratureRule, kernel_rule, tanh_sinh

METHODS = ("auto", "direct-sum", "integral", "extended-precision")


@dataclass(frozen=True)
class FracPowerSpec:
    """Validated parameters of a resolvent-power computation."""

    beta: complex
    N: int
    lam: complex = 1.0
    method: str = "auto"
    tolerance: float = 1e-10

    def __post_init__(self):
        beta, lam = complex(self.beta), complex(self.lam)
        if not beta.real > 0:
            raise ValueError(f"need Re(beta) > 0, got beta={beta}")
        if not lam.real > 0.5:
            raise ValueError(f"need Re(lam) > 1/2, got lam={lam}")
        if self.N < 0:
            raise ValueError("truncation order must be non-negative")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {METHODS}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "lam", lam)


def _binom_row(m, J):
    """Floats C(j+m, j) for j = 0..J-1 (exact integers, rounded once)."""
    return np.array([float(math.comb(j + m, j)) for j in range(J)])


# ---------------------------------------------------------------------------
# direct sum


def _power_table_dd(lam, beta, N):
    """(lam + n)^{-beta}, n = 0..N, as double-double real and imaginary parts."""
    with mpmath.workprec(128):
        b = mpmath.mpc(beta.real, beta.imag)
        vals = [mpmath.power(mpmath.mpc(lam.real + n, lam.imag), -b) for n in range(N + 1)]
        out = np.empty((4, N + 1))
        for n, v in enumerate(vals):
            for row, part in ((0, v.real), (2, v.imag)):
                hi = float(part)
                out[row, n] = hi
                out[row + 1, n] = float(part - hi)
    return out


def alternating_sum_entries(beta, N, lam=1.0, max_offset=None, tolerance=None):
    """Direct-sum evaluation with per-entry error bounds.

    Returns ``(values, bounds)``, two (N+1)x(N+1) arrays indexed [i, j].
    Entries with i - j > ``max_offset`` are left at zero with an infinite
    bound.  If ``tolerance`` is given, offsets are abandoned as soon as every
    entry at that offset has a bound above it (bounds grow with the offset).
    """
    beta, lam = complex(beta), complex(lam)
    P = _power_table_dd(lam, beta, N)
    absP = np.hypot(P[0], P[2])
    values = np.zeros((N + 1, N + 1), dtype=complex)
    bounds = np.full((N + 1, N + 1), np.inf)
    top = N if max_offset is None else min(N, max_offset)
    for m in range(top + 1):
        J = N - m + 1
        coeffs = [math.comb(m, k) for k in range(m + 1)]
        majorant = np.zeros(J)
        for k, c in enumerate(coeffs):
            majorant += c * absP[k : k + J]
        outer = _binom_row(m, J)
        bound = outer * (m + 4) * DD_EPS * majorant
        if tolerance is not None and np.all(bound > tolerance):
            break
        try:
            parts = [int_to_dd(c) for c in coeffs]
        except OverflowError:
            break
        re = (np.zeros(J), np.zeros(J))
        im = (np.zeros(J), np.zeros(J))
        for k, (ch, cl) in enumerate(parts):
            sl = slice(k, k + J)
            th, tl = dd_mul(ch, cl, P[0, sl], P[1, sl])
            uh, ul = dd_mul(ch, cl, P[2, sl], P[3, sl])
            if k % 2:
                th, tl, uh, ul = -th, -tl, -uh, -ul
            re = dd_add(*re, th, tl)
            im = dd_add(*im, uh, ul)
        val = outer * ((re[0] + re[1]) + 1j * (im[0] + im[1]))
        j = np.arange(J)
        values[j + m, j] = val
        bounds[j + m, j] = bound + 2.0**-52 * np.abs(val)
    return values, bounds


# ---------------------------------------------------------------------------
# integral


def integral_rule(beta, lam=1.0, step: float | None = None) -> QuadratureRule:
    """Double-exponential rule for the integral method (see :func:`kernel_rule`)."""
    return kernel_rule(beta, lam, step)


def _integral_once(beta, lam, N, rule, max_offset):
    t = rule.nodes
    log_t = np.log(t)
    log_w = np.log(rule.weights)
    log_q = np.log(-np.expm1(-t))
    base = (beta - 1.0) * log_t + log_w - lam * t - loggamma(beta)
    out = np.zeros((N + 1, N + 1), dtype=complex)
    top = N if max_offset is None else min(N, max_offset)
    for m in range(top + 1):
        J = N - m + 1
        j = np.arange(J)
        log_binom = np.log(_binom_row(m, J))
        expo = base[None, :] + m * log_q[None, :] - j[:, None] * t[None, :] + log_binom[:, None]
        with np.errstate(under="ignore"):
            out[j + m, j] = np.exp(expo).sum(axis=1)
    return out


def integral_entries(beta, N, lam=1.0, rule: QuadratureRule | None = None,
                     max_offset=None, tolerance=None):
    """Quadrature evaluation; returns ``(values, error_estimate)``.

    The error estimate is the max-abs difference against the refined rule.
    """
    beta, lam = complex(beta), complex(lam)
    rule = rule or integral_rule(beta, lam)
    coarse = _integral_once(beta, lam, N, rule, max_offset)
    fine = _integral_once(beta, lam, N, rule.refined(), max_offset)
    err = float(np.max(np.abs(fine - coarse)))
    if tolerance is not None and err > tolerance:
        raise QuadratureError(
            f"integral method error estimate {err:.2e} exceeds tolerance {tolerance:.2e}",
            estimate=err,
        )
    return fine, err


# ---------------------------------------------------------------------------
# extended precision


def extended_precision_entries(beta, N, lam=1.0, max_offset=None, digits: int = 17):
    """Alternating sum in mpmath with precision sized to the cancellation."""
    beta, lam = complex(beta), complex(lam)
    top = N if max_offset is None else min(N, max_offset)
    # largest |term| is at most C(N, N/2) 2^N |lam|^{-Re beta}-ish; size from logs
    log2_terms = max(
        (gammaln(N + 1) - gammaln(j + 1) - gammaln(N - j + 1)) / math.log(2) + min(top, N - j)
        for j in range(N + 1)
    )
    bits = int(log2_terms) + int(digits * 3.33) + 32
    out = np.zeros((N + 1, N + 1), dtype=complex)
    with mpmath.workprec(bits):
        b = mpmath.mpc(beta.real, beta.imag)
        P = [mpmath.power(mpmath.mpc(lam.real + n, lam.imag), -b) for n in range(N + 1)]
        for m in range(top + 1):
            signed = [(-1) ** k * math.comb(m, k) for k in range(m + 1)]
            for j in range(N - m + 1):
                s = mpmath.fsum(c * P[j + k] for k, c in enumerate(signed))
                out[j + m, j] = complex(math.comb(j + m, j) * s)
    return out


# ---------------------------------------------------------------------------
# public matrices


def _lower(values):
    return OperatorMatrix(values, "lower-triangular")


def _evaluate(spec: FracPowerSpec, rule=None) -> np.ndarray:
    beta, lam, N, tol = spec.beta, spec.lam, spec.N, spec.tolerance
    if spec.method == "direct-sum":
        values, bounds = alternating_sum_entries(beta, N, lam)
        worst = float(np.max(bounds[np.tril_indices(N + 1)]))
        if worst > tol:
            i, j = np.unravel_index(np.argmax(np.tril(bounds)), bounds.shape)
            raise CancellationError(
                f"direct sum cannot meet tolerance {tol:.1e}: error bound {worst:.2e} "
                f"at entry ({i}, {j}); use method='integral' or 'extended-precision'",
                bound=worst,
            )
        return values
    if spec.method == "integral":
        return integral_entries(beta, N, lam, rule, tolerance=tol)[0]
    if spec.method == "extended-precision":
        return extended_precision_entries(beta, N, lam)
    values, bounds = alternating_sum_entries(beta, N, lam, tolerance=tol)
    lower = np.tril(np.ones((N + 1, N + 1), dtype=bool))
    bad = lower & (bounds > tol)
    if bad.any():
        offsets = np.subtract.outer(np.arange(N + 1), np.arange(N + 1))
        first = int(offsets[bad].min())
        fallback, _ = integral_entries(beta, N, lam, rule, tolerance=tol)
        # whole diagonals switch, so the method boundary is an offset i - j
        switch = lower & (offsets >= first)
        values = np.where(switch, fallback, values)
    return values


def resolvent_power_matrix(beta, N: int, lam=1.0, method: str = "auto",
                           tolerance: float = 1e-10, rule: QuadratureRule | None = None) -> OperatorMatrix:
    """Lower-triangular matrix of (lam - A)^{-beta} in transposed convention.

    Raises
    ------
    CancellationError
        ``method='direct-sum'`` and some entry's error bound exceeds ``tolerance``.
    QuadratureError
        The integral method's error estimate exceeds ``tolerance``.
    """
    spec = FracPowerSpec(beta, N, lam, method, tolerance)
    return _lower(_evaluate(spec, rule))


def frac_cesaro_matrix(beta, N: int, method: str = "auto", tolerance: float = 1e-10,
                       rule: QuadratureRule | None = None) -> OperatorMatrix:
    """Matrix M_beta of C^beta: the lam = 1 resolvent power."""
    return resolvent_power_matrix(beta, N, 1.0, method, tolerance, rule)


def square_root_matrix(lam, N: int, rule: QuadratureRule | None = None,
                       tolerance: float = 1e-10) -> OperatorMatrix:
    """B = pi^{-1/2} int_0^inf t^{-1/2} e^{-lam t} T(t) dt, by quadrature.

    B B = (lam - A)^{-1}; at lam = 1 this is a square root of C.
    """
    return resolvent_power_matrix(0.5, N, lam, "integral", tolerance, rule)


def semigroup_property_residual(beta1, beta2, N: int, method: str = "integral",
                                tolerance: float = 1e-10) -> float:
    """max |M_{b1} M_{b2} - M_{b1+b2}|."""
    a = frac_cesaro_matrix(beta1, N, method, tolerance)
    b = frac_cesaro_matrix(beta2, N, method, tolerance)
    c = frac_cesaro_matrix(complex(beta1) + complex(beta2), N, method, tolerance)
    return matmul(a, b).max_abs_diff(c)


def method_agreement(beta, N: int, max_offset: int, lam=1.0):
    """Compare direct-sum and integral entries with i - j <= max_offset.

    Returns ``(max_abs_difference, max_direct_sum_bound)``.
    """
    direct, bounds = alternating_sum_entries(beta, N, lam, max_offset=max_offset)
    integ, _ = integral_entries(beta, N, lam, max_offset=max_offset)
    i, j = np.tril_indices(N + 1)
    band = (i - j) <= max_offset
    i, j = i[band], j[band]
    return float(np.max(np.abs(direct[i, j] - integ[i, j]))), float(np.max(bounds[i, j]))


def phillips_apply(density, N: int, rule: QuadratureRule | None = None,
                   tolerance: float | None = None) -> OperatorMatrix:
    """int_0^inf C_{phi_t} density(t) dt, entry by entry.

    ``density`` is a vectorized callable on (0, inf), integrable against
    e^{t/2}.  The result is upper-triangular in the package convention (it
    is a function of A); its transpose is the matching lower-triangular
    matrix returned by :func:`resolvent_power_matrix`.  With density
    t^{beta-1} e^{-t} / Gamma(beta) it reproduces C*^beta, the transpose of
    :func:`frac_cesaro_matrix`.
    """

    def once(r):
        t = r.nodes
        n = np.arange(N + 1)
        lg = gammaln(n + 1)
        log_binom = lg[None, :] - lg[:, None] - gammaln(np.maximum(n[None, :] - n[:, None], 0) + 1)
        upper = n[:, None] <= n[None, :]
        off = (n[None, :] - n[:, None]).astype(float)
        weights = r.weights * np.asarray(density(t), dtype=complex)
        out = np.zeros((N + 1, N + 1), dtype=complex)
        log_q = np.log(-np.expm1(-t))
        for tk, lq, wk in zip(t, log_q, weights):
            if wk == 0:
                continue
            expo = log_binom - n[:, None] * tk + off * lq
            with np.errstate(under="ignore"):
                out += wk * np.where(upper, np.exp(np.where(upper, expo, -np.inf)), 0.0)
        return out

    rule = rule or tanh_sinh()
    coarse = once(rule)
    if tolerance is None:
        return OperatorMatrix(coarse, "upper-triangular")
    fine = once(rule.refined())
    err = float(np.max(np.abs(fine - coarse)))
    if err > tolerance:
        raise QuadratureError(f"Phillips integral error estimate {err:.2e} exceeds {tolerance:.2e}",
                              estimate=err)
    return OperatorMatrix(fine, "upper-triangular")

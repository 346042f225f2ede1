"""Quadrature on [0, inf) for kernels t^{beta-1} e^{-lambda t} (1 - e^{-t})^m.

Three rule families are provided:

* ``gauss-laguerre`` -- generalized Gauss-Laguerre nodes for the weight
  s^alpha e^{-s}.  Used with the scaling s = lambda t, which turns the
  exponential into the rule's weight and lets alpha = Re(beta) - 1 absorb the
  endpoint singularity exactly.  For complex lambda the scaling is a rotation
  of the integration ray, valid because the remaining factor is analytic and
  bounded in the sector between the real axis and the rotated ray.
* ``tanh-sinh`` -- the double-exponential map t = exp(pi/2 sinh u) on a
  uniform u-grid (the half-line form of tanh-sinh).  Robust for algebraic
  endpoint behaviour at 0 and any exponential decay at infinity.
* ``gauss-jacobi-transformed`` -- Gauss-Jacobi nodes mapped to (0, 1), used
  for finite windows.

Error estimates come from re-running with a refined rule (node count
doubled) and differencing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import comb, gamma, roots_genlaguerre, roots_jacobi
from scipy.special import logsumexp

from .errors import QuadratureError

KINDS = ("gauss-laguerre", "tanh-sinh", "gauss-jacobi-transformed")


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights of a fixed rule.

    For ``gauss-laguerre`` the rule integrates s^alpha e^{-s} f(s) over
    (0, inf); for ``tanh-sinh`` it integrates f(t) over (0, inf); for
    ``gauss-jacobi-transformed`` it integrates (1-u)^alpha u^beta f(u) over
    (0, 1).
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    alpha: float = 0.0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be positive and strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def count(self) -> int:
        return self.nodes.size

    def refined(self) -> "QuadratureRule":
        """The same family with (about) twice as many nodes."""
        if self.kind == "gauss-laguerre":
            return gauss_laguerre(2 * self.count, self.alpha)
        if self.kind == "tanh-sinh":
            return tanh_sinh(2 * self.count - 1, self.params["lower"], self.params["upper"])
        return gauss_jacobi(2 * self.count, self.alpha, self.params.get("beta", 0.0))

    def with_alpha(self, alpha: float) -> "QuadratureRule":
        """Gauss-Laguerre rule with the same count and a different weight exponent."""
        if self.kind != "gauss-laguerre":
            raise ValueError("only Gauss-Laguerre rules carry a weight exponent")
        if alpha == self.alpha:
            return self
        return gauss_laguerre(self.count, alpha)


@lru_cache(maxsize=64)
def _genlaguerre(n, alpha):
    x, w = roots_genlaguerre(n, alpha)
    return x, w


def gauss_laguerre(n: int = 64, alpha: float = 0.0) -> QuadratureRule:
    if n < 1:
        raise ValueError("need at least one node")
    if alpha <= -1:
        raise ValueError("Laguerre weight exponent must exceed -1")
    x, w = _genlaguerre(int(n), float(alpha))
    keep = w > 0  # far nodes underflow to zero weight for large n
    return QuadratureRule("gauss-laguerre", x[keep], w[keep], alpha=float(alpha))


def tanh_sinh(n: int = 321, lower: float = 6.0, upper: float = 3.5) -> QuadratureRule:
    """Double-exponential rule for the half-line.

    The u-grid spans [-lower, upper]; t ranges from exp(-pi/2 sinh(lower))
    (about 1e-138 for the default) to exp(pi/2 sinh(upper)) (about 2e11).
    """
    if n < 3:
        raise ValueError("need at least three nodes")
    u = np.linspace(-lower, upper, n)
    h = u[1] - u[0]
    t = np.exp(0.5 * math.pi * np.sinh(u))
    w = h * 0.5 * math.pi * np.cosh(u) * t
    keep = (w > 0) & (t > 0) & np.isfinite(t)
    return QuadratureRule("tanh-sinh", t[keep], w[keep], params={"lower": lower, "upper": upper})


def gauss_jacobi(n: int = 64, alpha: float = 0.0, beta: float = 0.0) -> QuadratureRule:
    """Gauss-Jacobi rule mapped from [-1, 1] to (0, 1)."""
    x, w = roots_jacobi(int(n), alpha, beta)
    u = 0.5 * (x + 1.0)
    w = w * 0.5 ** (1.0 + alpha + beta)
    return QuadratureRule("gauss-jacobi-transformed", u, w, alpha=alpha, params={"beta": beta})


DEFAULT_LAGUERRE = 64


def default_rule() -> QuadratureRule:
    return gauss_laguerre(DEFAULT_LAGUERRE)


def kernel_rule(beta, lam=1.0, step: float | None = None) -> QuadratureRule:
    """Half-line double-exponential rule sized for t^{beta-1} e^{-lam t}.

    The lower end is pushed until t^{Re beta} < e^{-45} and the upper end
    until e^{-Re(lam) t} < e^{-45}.  The default u-step is 1/32, shrunk in
    proportion to |Im beta| / Re beta, because t^{i Im beta} oscillates in
    log t all the way down to the lower end, and in proportion to
    |Im lam| / Re lam, for the oscillation of e^{-lam t} along the slowly
    decaying tail.
    """
    beta, lam = complex(beta), complex(lam)
    lower = math.asinh(2 * 45 / (math.pi * beta.real))
    upper = max(2.5, math.asinh(2 * math.log(100 / lam.real) / math.pi))
    if step is None:
        tiny = 1e-300
        step = (1.0 / 32) * min(1.0, 4.0 * beta.real / max(abs(beta.imag), tiny),
                                lam.real / max(1.5 * abs(lam.imag), tiny))
    n = int(round((lower + upper) / step)) + 1
    return tanh_sinh(n, lower, upper)


def _log1mexp_neg(t):
    """log(1 - e^{-t}) for t > 0 (complex t allowed)."""
    return np.log(-np.expm1(-t))


def _gamma_kernel_sum(lam, beta, m, rule):
    if rule.kind == "gauss-laguerre":
        a = rule.with_alpha(float(beta.real) - 1.0)
        s = a.nodes
        t = s / lam
        log_g = 1j * beta.imag * np.log(s)
        if m:
            log_g = log_g + m * _log1mexp_neg(t)
        return lam ** (-beta) * np.sum(a.weights * np.exp(log_g))
    if rule.kind == "tanh-sinh":
        t = rule.nodes
        log_f = (beta - 1.0) * np.log(t) - lam * t
        if m:
            log_f = log_f + m * _log1mexp_neg(t)
        with np.errstate(under="ignore"):
            return np.sum(rule.weights * np.exp(log_f))
    raise ValueError(f"rule kind {rule.kind!r} is not a half-line rule")


def integrate_gamma_kernel(lam, beta, m: int = 0, rule: QuadratureRule | None = None,
                           tol: float | None = None, full_output: bool = False):
    """Approximate int_0^inf t^{beta-1} e^{-lam t} (1 - e^{-t})^m dt.

    For m = 0 the exact value is Gamma(beta) lam^{-beta} (principal branch).

    Parameters
    ----------
    lam, beta : complex
        Both must have positive real part.
    m : int
        Power of (1 - e^{-t}).
    rule : QuadratureRule, optional
        Defaults to 64-node Gauss-Laguerre, falling back to
        :func:`kernel_rule` when the Laguerre doubling estimate exceeds
        1e-12 relative (complex beta, or lam far from the positive axis).
    tol : float, optional
        If given, the doubling error estimate must not exceed
        ``tol * max(1, |value|)``.
    full_output : bool
        Return ``(value, error_estimate)`` instead of the value.

    Raises
    ------
    QuadratureError
        When the error estimate exceeds ``tol``.
    """
    lam, beta = complex(lam), complex(beta)
    if lam.real <= 0 or beta.real <= 0:
        raise ValueError("need Re(lam) > 0 and Re(beta) > 0")
    if m < 0:
        raise ValueError("m must be non-negative")
    if rule is None:
        rule = default_rule()
        value = complex(_gamma_kernel_sum(lam, beta, m, rule))
        check = complex(_gamma_kernel_sum(lam, beta, m, rule.refined()))
        if abs(check - value) > 1e-12 * max(1.0, abs(value)):
            rule = kernel_rule(beta, lam)
    value = complex(_gamma_kernel_sum(lam, beta, m, rule))
    if tol is None and not full_output:
        return value
    err = abs(complex(_gamma_kernel_sum(lam, beta, m, rule.refined())) - value)
    if tol is not None and err > tol * max(1.0, abs(value)):
        raise QuadratureError(
            f"gamma-kernel quadrature error estimate {err:.2e} exceeds tolerance {tol:.2e}",
            estimate=err,
        )
    return (value, err) if full_output else value


def gamma_kernel_exact(lam, beta) -> complex:
    """Closed form Gamma(beta) lam^{-beta} of the m = 0 kernel integral."""
    lam, beta = complex(lam), complex(beta)
    return complex(gamma(beta) * lam ** (-beta))


def laplace_resolvent_entry(n: int, j: int, rule: QuadratureRule | None = None,
                            tol: float | None = None) -> complex:
    """int_0^inf e^{-t} [C_{phi_t}]_{j,n} dt by quadrature (64-node Laguerre by default).

    The integrand is C(n, j) e^{-(j+1)t} (1-e^{-t})^{n-j}; the exact value is
    the Beta integral 1/(n+1), i.e. the (j, n) entry of C*.
    """
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    rule = rule or default_rule()
    return float(comb(n, j, exact=True)) * integrate_gamma_kernel(1 + j, 1.0, n - j, rule, tol)


# ---------------------------------------------------------------------------
# generic integrals used by the line model


def _finite(f, a, b, rule):
    u = rule.nodes
    x = a + (b - a) * u
    return (b - a) * np.sum(rule.weights * f(x))


def _halfline(f, a, direction, rule):
    # direction +1: (a, inf); -1: (-inf, a)
    x = a + direction * rule.nodes
    vals = f(x)
    with np.errstate(invalid="ignore", over="ignore"):
        terms = rule.weights * vals
    terms = np.where(np.isfinite(terms), terms, 0.0)
    return np.sum(terms)


def _pieces(a, b, breakpoints):
    pts = sorted({p for p in breakpoints if a < p < b})
    edges = [a, *pts, b]
    return list(zip(edges[:-1], edges[1:]))


def integrate(f, a: float, b: float, breakpoints=(), finite_rule=None, half_rule=None,
              center: float = 0.0):
    """Integral of a vectorized callable over (a, b), a or b possibly infinite.

    The interval is split at ``breakpoints`` (discontinuities of ``f``).
    Infinite pieces use the tanh-sinh half-line rule after the shift
    y = c + s or y = c - s; finite pieces use Gauss-Legendre.  The
    integrand must decay at infinite endpoints; wherever it overflows while
    its weight underflows the contribution is taken as zero.
    """
    finite_rule = finite_rule or gauss_jacobi(64)
    half_rule = half_rule or tanh_sinh()
    if a >= b:
        return 0.0
    if math.isinf(a) and math.isinf(b):
        cuts = [center]
    else:
        cuts = []
    total = 0.0
    for lo, hi in _pieces(a, b, list(breakpoints) + cuts):
        if math.isinf(lo):
            total = total + _halfline(f, hi, -1, half_rule)
        elif math.isinf(hi):
            total = total + _halfline(f, lo, +1, half_rule)
        else:
            total = total + _finite(f, lo, hi, finite_rule)
    return total


def log_integrate(log_f, a: float, b: float, breakpoints=(), finite_rule=None, half_rule=None,
                  center: float = 0.0) -> float:
    """log of the integral of exp(log_f) over (a, b), evaluated in log space.

    For positive integrands whose values overflow double precision.
    """
    finite_rule = finite_rule or gauss_jacobi(64)
    half_rule = half_rule or tanh_sinh()
    cuts = [center] if math.isinf(a) and math.isinf(b) else []
    logs = []
    for lo, hi in _pieces(a, b, list(breakpoints) + cuts):
        if math.isinf(lo):
            x, w = hi - half_rule.nodes, half_rule.weights
        elif math.isinf(hi):
            x, w = lo + half_rule.nodes, half_rule.weights
        else:
            x, w = lo + (hi - lo) * finite_rule.nodes, (hi - lo) * finite_rule.weights
        with np.errstate(over="ignore", invalid="ignore"):
            lv = np.asarray(log_f(x), dtype=float) + np.log(w)
        lv = np.where(np.isnan(lv), -np.inf, lv)
        logs.append(logsumexp(lv))
    return float(logsumexp(logs)) if logs else -math.inf

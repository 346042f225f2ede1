"""Weighted line model: exact evaluation trees, the transform chain and weights.

Functions are never sampled.  An :class:`Evaluable` is a small tree of
closed-form nodes; every transform wraps its input in a node of the form

    (Tf)(x) = factor(x) * f(arg(x)),

so compositions such as W sigma_t W^{-1} evaluate without interpolation.  The
maps implemented are

* V_t g(x) = e^{-t} e^{-(1-e^{-t})x} g(e^{-t}x) on the half-line,
* the Mellin-type unitary T h(x) = x^{-1/2} h(log x) and its inverse
  T^{-1} g(y) = e^{y/2} g(e^y),
* sigma_t h(y) = e^{-(1-e^{-t})e^y} h(y - t) and the right shift
  S_t f(y) = f(y - t) on the line,
* W h = h / sqrt(w) and its inverse, with the weight w(y) = e^{-2(e^y - 1)}.

W sigma_t W^{-1} = S_t is an algebraic identity; evaluated through the tree the
exponents cancel up to rounding of terms of size e^y, which is why
:func:`verify_intertwining` measures residuals relative to max(1, |S_t f|).

The disc-to-half-plane isomorphism of the chain has no explicit formula to
implement and the inverse Laplace transform on arbitrary data is ill-posed,
so the chain is never run end to end; each link is checked on its own.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import QuadratureError
from .quadrature import gauss_jacobi, integrate, log_integrate, tanh_sinh

LINE = "R"
HALFLINE = "R+"


def _arr(x):
    return np.asarray(x, dtype=float)


class Evaluable:
    """A function on the line or half-line given by an exact evaluation rule.

    Subclasses implement ``_eval`` on float arrays; ``__call__`` checks the
    domain and returns complex values of the same shape.
    """

    domain: str = LINE

    def __call__(self, x):
        x = _arr(x)
        if self.domain == HALFLINE and np.any(x <= 0):
            raise ValueError("half-line function evaluated at a non-positive point")
        return np.asarray(self._eval(x), dtype=complex)

    def _eval(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def breakpoints(self) -> tuple:
        """Points where the function may be discontinuous."""
        return ()

    def log_abs(self, x):
        """log |f(x)|; overridden where a closed form avoids overflow."""
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(x)))

    # light algebra
    def __add__(self, other):
        return Sum((self, other))

    def __mul__(self, c):
        return Scaled(self, complex(c))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class ExpMonomial(Evaluable):
    """f_{lam,k}(y) = y^k e^{lam y}."""

    lam: complex
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("exponent k must be non-negative")
        object.__setattr__(self, "lam", complex(self.lam))

    def _eval(self, x):
        with np.errstate(over="ignore", invalid="ignore"):
            return x**self.k * np.exp(self.lam * x)

    def log_abs(self, x):
        x = _arr(x)
        with np.errstate(divide="ignore"):
            return self.k * np.log(np.abs(x)) + self.lam.real * x


@dataclass(frozen=True, eq=False)
class Window(Evaluable):
    """Indicator of (a, b) times ``inner`` (default 1).  a or b may be infinite."""

    a: float
    b: float
    inner: Evaluable | None = None

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("window needs a < b")

    def _eval(self, x):
        inside = (x > self.a) & (x < self.b)
        if self.inner is None:
            return inside.astype(complex)
        out = np.zeros(x.shape, dtype=complex)
        out[inside] = self.inner(x[inside])
        return out

    def breakpoints(self):
        inner = self.inner.breakpoints() if self.inner is not None else ()
        return tuple(p for p in (self.a, self.b) if math.isfinite(p)) + inner

    def log_abs(self, x):
        x = _arr(x)
        inside = (x > self.a) & (x < self.b)
        out = np.full(x.shape, -np.inf)
        if self.inner is None:
            out[inside] = 0.0
        else:
            out[inside] = self.inner.log_abs(x[inside])
        return out


@dataclass(frozen=True, eq=False)
class Shifted(Evaluable):
    """f(y - tau), the right shift by tau."""

    inner: Evaluable
    tau: float

    def _eval(self, x):
        return self.inner(x - self.tau)

    def breakpoints(self):
        return tuple(p + self.tau for p in self.inner.breakpoints())

    def log_abs(self, x):
        return self.inner.log_abs(_arr(x) - self.tau)


@dataclass(frozen=True, eq=False)
class Scaled(Evaluable):
    inner: Evaluable
    c: complex

    def _eval(self, x):
        return self.c * self.inner(x)

    def breakpoints(self):
        return self.inner.breakpoints()

    def log_abs(self, x):
        with np.errstate(divide="ignore"):
            return math.log(abs(self.c)) + self.inner.log_abs(x) if self.c != 0 else np.full(_arr(x).shape, -np.inf)


@dataclass(frozen=True, eq=False)
class Multiplied(Evaluable):
    """inner(x) * rule(x) for a pointwise rule such as a weight factor."""

    inner: Evaluable
    rule: Callable
    label: str = "multiplied"

    def _eval(self, x):
        return self.inner(x) * self.rule(x)

    def breakpoints(self):
        return self.inner.breakpoints()


@dataclass(frozen=True, eq=False)
class Sum(Evaluable):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("empty sum")
        domains = {t.domain for t in self.terms}
        if len(domains) > 1:
            raise ValueError("cannot add functions on different domains")
        object.__setattr__(self, "domain", domains.pop())

    def _eval(self, x):
        return sum(t(x) for t in self.terms)

    def breakpoints(self):
        return tuple(p for t in self.terms for p in t.breakpoints())


@dataclass(frozen=True, eq=False)
class Formula(Evaluable):
    """Pointwise closed form ``func(x, **params)``, tagged for reporting."""

    tag: str
    func: Callable
    params: dict = field(default_factory=dict)
    domain: str = LINE
    jumps: tuple = ()

    def _eval(self, x):
        return self.func(x, **self.params)

    def breakpoints(self):
        return self.jumps


@dataclass(frozen=True, eq=False)
class Transformed(Evaluable):
    """factor(x) * inner(arg(x)); ``arg_inv`` maps inner breakpoints back."""

    tag: str
    inner: Evaluable
    factor: Callable
    arg: Callable
    arg_inv: Callable
    domain: str = LINE

    def _eval(self, x):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return self.factor(x) * self.inner(self.arg(x))

    def breakpoints(self):
        out = []
        for p in self.inner.breakpoints():
            with np.errstate(divide="ignore", over="ignore"):
                q = float(self.arg_inv(p))
            if math.isfinite(q) and (self.domain == LINE or q > 0):
                out.append(q)
        return tuple(out)


def constant(c=1.0, domain=LINE) -> Evaluable:
    c = complex(c)
    return Formula("constant", lambda x, c: np.full(x.shape, c), {"c": c}, domain)


def on_halfline(func: Callable, tag: str = "halfline-formula", **params) -> Evaluable:
    return Formula(tag, func, params, HALFLINE)


def _require_domain(f: Evaluable, domain: str):
    if f.domain != domain:
        raise ValueError(f"expected a function on {domain}, got one on {f.domain}")


def _check_t(t):
    t = float(t)
    if not t >= 0:
        raise ValueError(f"semigroup time must be non-negative, got {t}")
    return t


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True, eq=False)
class WeightFn:
    """Positive weight given by its logarithm."""

    tag: str
    log_rule: Callable
    params: dict = field(default_factory=dict)

    def log(self, y):
        return np.asarray(self.log_rule(_arr(y), **self.params), dtype=float)

    def __call__(self, y):
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(self.log(y))

    def sqrt(self, y):
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(0.5 * self.log(y))

    @classmethod
    def canonical(cls) -> "WeightFn":
        """w(y) = e^{-2(e^y - 1)}."""
        return cls("canonical", lambda y: -2.0 * np.expm1(y))

    @classmethod
    def exponential(cls, rate: float = 1.0) -> "WeightFn":
        return cls("exponential", lambda y, rate: -rate * y, {"rate": rate})

    @classmethod
    def constant(cls, value: float = 1.0) -> "WeightFn":
        if value <= 0:
            raise ValueError("weight must be positive")
        return cls("constant", lambda y, value: np.full(y.shape, math.log(value)), {"value": value})

    @classmethod
    def gaussian_growth(cls) -> "WeightFn":
        """e^{y^2}, which violates the non-standardness condition at -inf."""
        return cls("gaussian-growth", lambda y: y * y)


CANONICAL = WeightFn.canonical()


def weight_eval(y):
    """Canonical weight e^{-2(e^y - 1)}, with expm1 so that w(0) = 1 exactly."""
    out = CANONICAL(y)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# transforms


def halfline_semigroup_apply(t: float, g: Evaluable) -> Evaluable:
    """V_t g(x) = e^{-t} e^{-(1-e^{-t})x} g(e^{-t}x)."""
    t = _check_t(t)
    _require_domain(g, HALFLINE)
    p, q = math.exp(-t), -math.expm1(-t)
    return Transformed(f"V[{t}]", g, lambda x: p * np.exp(-q * x), lambda x: p * x, lambda u: u / p, HALFLINE)


def mellin_unitary(h: Evaluable) -> Evaluable:
    """T h(x) = x^{-1/2} h(log x): from the line to the half-line."""
    _require_domain(h, LINE)
    return Transformed("T", h, lambda x: x**-0.5, np.log, np.exp, HALFLINE)


def mellin_unitary_inv(g: Evaluable) -> Evaluable:
    """T^{-1} g(y) = e^{y/2} g(e^y)."""
    _require_domain(g, HALFLINE)
    return Transformed("T^-1", g, lambda y: np.exp(0.5 * y), np.exp, np.log, LINE)


def sigma_apply(t: float, h: Evaluable) -> Evaluable:
    """sigma_t h(y) = e^{-(1-e^{-t})e^y} h(y - t)."""
    t = _check_t(t)
    _require_domain(h, LINE)
    q = -math.expm1(-t)
    return Transformed(f"sigma[{t}]", h, lambda y: np.exp(-q * np.exp(y)), lambda y: y - t, lambda u: u + t)


def shift_apply(t: float, f: Evaluable) -> Evaluable:
    """S_t f(y) = f(y - t)."""
    t = _check_t(t)
    _require_domain(f, LINE)
    return Shifted(f, t)


def weight_conj(h: Evaluable, w: WeightFn = CANONICAL) -> Evaluable:
    """W h = h / sqrt(w)."""
    _require_domain(h, LINE)
    return Transformed("W", h, lambda y: np.exp(-0.5 * w.log(y)), lambda y: y, lambda u: u)


def weight_conj_inv(f: Evaluable, w: WeightFn = CANONICAL) -> Evaluable:
    """W^{-1} f = f sqrt(w)."""
    _require_domain(f, LINE)
    return Transformed("W^-1", f, lambda y: np.exp(0.5 * w.log(y)), lambda y: y, lambda u: u)


def mixed_residual(a, b) -> float:
    """max |a - b| / max(1, |b|): absolute for small values, relative for large."""
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def verify_intertwining(t: float, f: Evaluable, probes) -> float:
    """max over probes of |W sigma_t W^{-1} f - S_t f| / max(1, |S_t f|).

    Probes closer than 1e-9 to a discontinuity of S_t f are dropped.
    """
    probes = _arr(probes)
    lhs = weight_conj(sigma_apply(t, weight_conj_inv(f)))
    rhs = shift_apply(t, f)
    keep = np.ones(probes.shape, dtype=bool)
    for p in rhs.breakpoints():
        keep &= np.abs(probes - p) > 1e-9
    probes = probes[keep]
    return mixed_residual(lhs(probes), rhs(probes))


# ---------------------------------------------------------------------------
# weighted norms


def _rules(refine: bool):
    fin, half = gauss_jacobi(64), tanh_sinh()
    return (fin.refined(), half.refined()) if refine else (fin, half)


def _peak(log_integrand, a, b):
    """Coarse location of the integrand's maximum, used as an extra split point."""
    lo = max(a, -60.0)
    hi = min(b, 12.0)
    if not lo < hi:
        return ()
    grid = np.linspace(lo, hi, 1441)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        vals = np.asarray(log_integrand(grid), dtype=float)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    if not np.isfinite(vals.max()):
        return ()
    y = float(grid[int(np.argmax(vals))])
    return (y,) if a < y < b else ()


def weighted_norm_sq(f: Evaluable, w: WeightFn = CANONICAL, interval=(-math.inf, math.inf),
                     tol: float | None = None, full_output: bool = False):
    """int |f|^2 w dy over ``interval`` by split quadrature.

    With ``tol`` the doubling error estimate must not exceed
    ``tol * max(1, value)``; otherwise :class:`QuadratureError` is raised.
    """
    a, b = interval

    def integrand(y):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return np.abs(f(y)) ** 2 * w(y)

    def run(refine):
        fin, half = _rules(refine)
        return float(integrate(integrand, a, b, f.breakpoints() + peak, fin, half))

    peak = _peak(lambda y: 2.0 * f.log_abs(y) + w.log(y), a, b)

    value = run(False)
    if tol is None and not full_output:
        return value
    err = abs(run(True) - value)
    if tol is not None and err > tol * max(1.0, value):
        raise QuadratureError(f"weighted norm error estimate {err:.2e} exceeds {tol:.2e}", estimate=err)
    return (value, err) if full_output else value


def log_weighted_norm_sq(f: Evaluable, w: WeightFn = CANONICAL, interval=(-math.inf, math.inf)) -> float:
    """log of :func:`weighted_norm_sq`, integrated in log space."""
    a, b = interval

    def log_integrand(y):
        return 2.0 * f.log_abs(y) + w.log(y)

    return log_integrate(log_integrand, a, b, f.breakpoints() + _peak(log_integrand, a, b))


def line_inner(f: Evaluable, g: Evaluable, w: WeightFn = CANONICAL, interval=(-math.inf, math.inf)) -> complex:
    """<f, g> = int f conj(g) w dy."""

    def integrand(y):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return f(y) * np.conj(g(y)) * w(y)

    fin, half = _rules(False)
    return complex(integrate(integrand, *interval, tuple(f.breakpoints()) + tuple(g.breakpoints()), fin, half))


def halfline_norm_sq(g: Evaluable) -> float:
    """int_0^inf |g(x)|^2 dx (the half-line L^2 norm)."""
    _require_domain(g, HALFLINE)

    def integrand(x):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return np.abs(g(x)) ** 2

    pts = tuple(p for p in g.breakpoints() if p > 0)
    edges = sorted({0.0, *pts})
    total = 0.0
    half = tanh_sinh()
    for lo, hi in zip(edges, edges[1:] + [math.inf]):
        if math.isinf(hi):
            total += float(np.sum(half.weights * integrand(lo + half.nodes)))
        else:
            # DE rule on (lo, hi) through x = lo + (hi-lo) s/(1+s)
            s = half.nodes
            x = lo + (hi - lo) * s / (1 + s)
            jac = (hi - lo) / (1 + s) ** 2
            total += float(np.sum(half.weights * jac * integrand(x)))
    return total


# ---------------------------------------------------------------------------
# weight diagnostics


def domar_nonstandard_indicator(w: WeightFn = CANONICAL, y_grid=None) -> dict:
    """Samples of log w(y) / y along a grid decreasing towards -inf.

    A finite liminf as y -> -inf is the condition under which non-standard
    shift-invariant subspaces exist.  Returns the ratios and their running
    minimum.
    """
    y = _arr(y_grid if y_grid is not None else -np.logspace(0, 3, 31))
    if np.any(y >= 0) or np.any(np.diff(y) >= 0):
        raise ValueError("grid must be negative and strictly decreasing")
    ratio = w.log(y) / y
    return {
        "weight": w.tag,
        "y": y.tolist(),
        "ratio": ratio.tolist(),
        "running_min": np.minimum.accumulate(ratio).tolist(),
    }


def _strictly_increasing_tail(v, frac=0.5):
    v = np.asarray(v, dtype=float)
    if v.size < 2 or not np.all(np.isfinite(v)):
        return False
    tail = v[int(len(v) * (1 - frac)) :]
    return bool(tail.size >= 2 and np.all(np.diff(tail) > 0))


def domar_rigidity_check(w: WeightFn, x_grid) -> dict:
    """Sampled evidence for the three rigidity conditions on the half-line.

    * concavity of log w (second divided differences <= rounding level),
    * -log w(x) / x increasing without bound,
    * (log|log w(x)| - log x) / sqrt(log x) increasing without bound
      (sampled at x > 1 only).

    "Unbounded" is judged as "strictly increasing over the upper half of the
    grid".  The output is trend evidence, not a proof.
    """
    x = _arr(x_grid)
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    L = w.log(x)
    slopes = np.diff(L) / np.diff(x)
    second = np.diff(slopes) / (0.5 * (x[2:] - x[:-2])) if x.size >= 3 else np.zeros(0)
    if x.size >= 3:
        h = np.minimum(np.diff(x)[:-1], np.diff(x)[1:])
        slack = 64 * np.finfo(float).eps * np.maximum(1.0, np.abs(L[1:-1])) / h**2
    else:
        slack = np.zeros(0)
    with np.errstate(invalid="ignore"):
        violations = int(np.sum(~(second <= slack)))
    c2 = -L / x
    big = x > 1
    with np.errstate(divide="ignore", invalid="ignore"):
        c3 = (np.log(np.abs(L[big])) - np.log(x[big])) / np.sqrt(np.log(x[big]))
    status = lambda ok: "consistent" if ok else "violated on samples"  # noqa: E731
    return {
        "weight": w.tag,
        "concavity": {"max_second_difference": float(second.max()) if second.size else 0.0,
                      "violations": violations, "status": status(violations == 0)},
        "condition2": {"x": x.tolist(), "samples": c2.tolist(), "status": status(_strictly_increasing_tail(c2))},
        "condition3": {"x": x[big].tolist(), "samples": [float(v) if np.isfinite(v) else None for v in c3],
                       "status": status(_strictly_increasing_tail(c3))},
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2)


# ---------------------------------------------------------------------------
# Müntz demo and figure data


def muntz_ratio_table(n_max: int, w: WeightFn = CANONICAL):
    """Rows (n, lam = n^2, ratio) with ratio = ||e_lam||_{(-inf,0)} / ||e_lam||_R.

    Both norms are weighted and integrated in log space.  A strictly
    decreasing ratio shows that restriction to the negative half-line is not
    bounded below on the span of the e_{n^2}.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = []
    for n in range(1, n_max + 1):
        lam = float(n * n)
        e = ExpMonomial(lam, 0)
        left = log_weighted_norm_sq(e, w, (-math.inf, 0.0))
        full = log_weighted_norm_sq(e, w)
        rows.append((n, lam, math.exp(0.5 * (left - full))))
    return rows


def weight_profile_rows(y_min: float, y_max: float, step: float):
    if not step > 0:
        raise ValueError("step must be positive")
    if y_max < y_min:
        raise ValueError("need y_min <= y_max")
    count = int(math.floor((y_max - y_min) / step + 1e-9)) + 1
    y = float(y_min) + step * np.arange(count)
    return y, np.asarray(CANONICAL(y), dtype=float)


def weight_profile_csv(y_min: float, y_max: float, step: float) -> str:
    """CSV with header ``y,w`` sampling the canonical weight."""
    y, w = weight_profile_rows(y_min, y_max, step)
    lines = ["y,w"] + [f"{a!r},{b!r}" for a, b in zip(y.tolist(), w.tolist())]
    return "\n".join(lines) + "\n"

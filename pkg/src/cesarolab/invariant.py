"""Construction and residual certification of shift-invariant subspaces.

Two models are used, each certified on its own terms:

* the weighted line L^2(R, w dy), w(y) = e^{-2(e^y-1)}, where the right shifts
  S_t act and spans of exponential monomials f_{lam,k}(y) = y^k e^{lam y}
  are invariant because S_t f_{lam,k} is an explicit combination of
  f_{lam,0..k};
* the truncated disc model, where g_k = (1-z)^{-gamma} log^k(1/(1-z))
  form Jordan chains of the generator, (A - gamma) g_k = k g_{k-1}, so
  their spans are invariant for C* = (I - A)^{-1}.

No dictionary between the two parameter sets is asserted.

Certificates are plain dictionaries with the layout
``{"subspace": ..., "checks": [{"name", "residual", "tolerance", "pass"}]}``
plus free-form context fields, serializable with :func:`certificate_json`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureError
from .hardy import CoeffVector, inner
from .line_model import (
    CANONICAL,
    Evaluable,
    ExpMonomial,
    Window,
    line_inner,
    mixed_residual,
    shift_apply,
    weighted_norm_sq,
)
from .quadrature import integrate, tanh_sinh, gauss_jacobi
from .semigroup import generator_matrix

GRAM_TOLERANCE = 1e-6


# ---------------------------------------------------------------------------
# certificates


def check(name: str, residual: float, tolerance: float, passed: bool | None = None, **extra) -> dict:
    residual = float(residual)
    ok = residual <= tolerance if passed is None else bool(passed)
    return {"name": name, "residual": residual, "tolerance": float(tolerance), "pass": bool(ok), **extra}


def certificate(subspace: str, checks: list, **context) -> dict:
    return {"subspace": subspace, "checks": checks, "pass": all(c["pass"] for c in checks), **context}


def certificate_json(cert: dict, **kwargs) -> str:
    return json.dumps(cert, default=_json_default, **kwargs)


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SpectralData:
    """Finite set of points lam in the right half-plane with multiplicities.

    Multiplicity m at lam stands for the m functions f_{lam,0..m-1}.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple((complex(lam), int(mult)) for lam, mult in self.points)
        if not pts:
            raise ValueError("spectral data needs at least one point")
        lams = [p[0] for p in pts]
        if len(set(lams)) != len(lams):
            raise ValueError("spectral points must be distinct")
        for lam, mult in pts:
            if not lam.real > 0:
                raise ValueError(f"spectral point {lam} is not in the right half-plane")
            if mult < 1:
                raise ValueError("multiplicities must be at least 1")
        object.__setattr__(self, "points", pts)

    @classmethod
    def single(cls, lam, mult: int = 1) -> "SpectralData":
        return cls(((lam, mult),))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.points)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Finite list of vectors with their Gram matrix.

    ``model`` is ``"disc"`` (CoeffVector, H^2 inner product on stored
    coefficients), ``"line"`` (Evaluable, canonical weighted inner product)
    or ``"halfline-window(T)"``.
    """

    vectors: tuple
    gram: np.ndarray
    model: str
    labels: tuple = ()

    @classmethod
    def from_vectors(cls, vectors, model: str, labels=()) -> "SubspaceBasis":
        vectors = tuple(vectors)
        n = len(vectors)
        G = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(i, n):
                if model == "disc":
                    G[i, j] = inner(vectors[i], vectors[j])
                else:
                    G[i, j] = line_inner(vectors[i], vectors[j])
                G[j, i] = np.conj(G[i, j])
            G[i, i] = G[i, i].real
        return cls(vectors, G, model, tuple(labels))

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def relative_determinant(self) -> float:
        """det(G) / prod G_ii, in [0, 1]; 0 means dependent."""
        d = np.real(np.linalg.det(self.gram))
        return float(d / np.prod(np.real(np.diag(self.gram))))

    def is_independent(self, tol: float = GRAM_TOLERANCE) -> bool:
        return self.relative_determinant() > tol

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.gram - self.gram.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.gram).min())


# ---------------------------------------------------------------------------
# line model: exponential monomials


def exp_monomial_shift_expansion(lam, k: int, t: float) -> np.ndarray:
    """Coefficients c_j with S_t f_{lam,k} = sum_j c_j f_{lam,j}.

    c_j = C(k, j) (-t)^{k-j} e^{-lam t}, from expanding (y - t)^k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if not t >= 0:
        raise ValueError("shift must be non-negative")
    lam = complex(lam)
    e = np.exp(-lam * t)
    return np.array([math.comb(k, j) * (-t) ** (k - j) * e for j in range(k + 1)], dtype=complex)


def shift_reconstruction_residual(lam, k: int, t: float, probes) -> float:
    """max |S_t f_{lam,k} - sum_j c_j f_{lam,j}| / max(1, sum_j |c_j f_{lam,j}|).

    Near y = t the expansion cancels (it is (y - t)^k e^{lam(y-t)} written in
    powers of y), so the residual is measured against the size of its terms.
    """
    probes = np.asarray(probes, dtype=float)
    c = exp_monomial_shift_expansion(lam, k, t)
    lhs = shift_apply(t, ExpMonomial(lam, k))(probes)
    terms = [cj * ExpMonomial(lam, j)(probes) for j, cj in enumerate(c)]
    scale = np.maximum(1.0, sum(np.abs(x) for x in terms))
    return float(np.max(np.abs(sum(terms) - lhs) / scale))


def build_line_subspace(spec: SpectralData) -> SubspaceBasis:
    """Basis {f_{lam,k}: k < multiplicity} with its weighted Gram matrix."""
    vectors, labels = [], []
    for lam, mult in spec.points:
        for k in range(mult):
            vectors.append(ExpMonomial(lam, k))
            labels.append(f"f[{lam},{k}]")
    basis = SubspaceBasis.from_vectors(vectors, "line", labels)
    diag = np.real(np.diag(basis.gram))
    if not np.all(np.isfinite(diag)) or np.any(diag <= 0):
        raise QuadratureError("weighted Gram matrix is not finite and positive", estimate=None)
    return basis


def line_shift_certificate(spec: SpectralData, t_samples=(0.0, 0.5, 1.0, 5.0), probes=None,
                           seed: int = 0, tolerance: float = 1e-12) -> dict:
    """Shift invariance of span{f_{lam,k}} by exact expansion at sampled t."""
    rng = np.random.default_rng(seed)
    probes = np.asarray(probes) if probes is not None else rng.uniform(-10, 5, 200)
    checks = []
    for lam, mult in spec.points:
        for k in range(mult):
            for t in t_samples:
                r = shift_reconstruction_residual(lam, k, t, probes)
                checks.append(check(f"shift expansion lam={lam} k={k} t={t}", r, tolerance))
    return certificate("line span of exponential monomials", checks, seed=seed)


# ---------------------------------------------------------------------------
# disc model: generalized eigenvectors of the generator


def _binomial_series(gamma: complex, N: int) -> np.ndarray:
    """Coefficients of (1-z)^{-gamma}: a_{n+1} = a_n (gamma + n) / (n + 1)."""
    a = np.empty(N + 1, dtype=complex)
    a[0] = 1.0
    for n in range(N):
        a[n + 1] = a[n] * (gamma + n) / (n + 1)
    return a


def _log_series(N: int) -> np.ndarray:
    """Coefficients of log(1/(1-z)) = sum z^n / n."""
    out = np.zeros(N + 1)
    out[1:] = 1.0 / np.arange(1, N + 1)
    return out


def _check_gamma(gamma):
    gamma = complex(gamma)
    if not gamma.real < 0.5:
        raise ValueError(f"need Re(gamma) < 1/2 for membership in H^2, got {gamma}")
    return gamma


def gen_eigenvector_chain(gamma, k: int, N: int) -> list:
    """[g_0, ..., g_k] truncated at degree N."""
    gamma = _check_gamma(gamma)
    if k < 0:
        raise ValueError("k must be non-negative")
    g = _binomial_series(gamma, N)
    L = _log_series(N)
    chain = [CoeffVector(g)]
    for _ in range(k):
        g = np.convolve(g, L)[: N + 1]
        chain.append(CoeffVector(g))
    return chain


def gen_eigenvector_coeffs(gamma, k: int, N: int) -> CoeffVector:
    """Taylor coefficients of (1-z)^{-gamma} log^k(1/(1-z)) through degree N."""
    return gen_eigenvector_chain(gamma, k, N)[-1]


def chain_residual(gamma, k: int, N: int) -> float:
    """max_n |((A - gamma) g_k - k g_{k-1})_n| / scale_n over n <= N-1.

    scale_n sums the magnitudes of the terms entering row n, so this is the
    relative rounding error of the identity.
    """
    gamma = _check_gamma(gamma)
    chain = gen_eigenvector_chain(gamma, k, N)
    A = generator_matrix(N).entries
    g = chain[k].coeffs
    prev = chain[k - 1].coeffs if k else np.zeros_like(g)
    lhs = A @ g - gamma * g - k * prev
    n = np.arange(N + 1)
    scale = n * np.abs(g) + np.abs(gamma * g) + k * np.abs(prev)
    scale[:-1] += (n[1:]) * np.abs(g[1:])
    rows = slice(0, N)
    return float(np.max(np.abs(lhs[rows]) / np.maximum(scale[rows], np.finfo(float).tiny)))


def integral_moment(gamma, k: int) -> complex:
    """int_0^1 (1-x)^{-gamma} log^k(1/(1-x)) dx = k! / (1-gamma)^{k+1}.

    Equals sum_m g_m / (m+1) over all coefficients of g_k, i.e. (C* g_k)_0.
    """
    gamma = _check_gamma(gamma)
    return math.factorial(k) / (1 - gamma) ** (k + 1)


def adjoint_cesaro_apply(g: CoeffVector, moment: complex) -> CoeffVector:
    """(C* g)_n = sum_{m >= n} g_m/(m+1), exact given the full moment.

    The infinite tail is supplied by ``moment`` = sum over all m of
    g_m/(m+1), so (C* g)_n = moment - sum_{m<n} g_m/(m+1) has no truncation
    error in any row.
    """
    c = g.coeffs / np.arange(1, g.order + 2)
    head = np.concatenate(([0.0], np.cumsum(c)[:-1]))
    return CoeffVector(moment - head)


def eigen_relation_residual(gamma, N: int, window: int = 16) -> float:
    """max over n <= N - window of |(C* g_0)_n - g_n / (1-gamma)|, g_0 = (1-z)^{-gamma}."""
    g = gen_eigenvector_coeffs(gamma, 0, N)
    lhs = adjoint_cesaro_apply(g, integral_moment(gamma, 0)).coeffs
    rhs = g.coeffs / (1 - complex(gamma))
    return float(np.max(np.abs(lhs - rhs)[: N - window + 1]))


def verify_cesaro_coinvariance(gamma, k: int, N: int, window: int = 16, samples: int = 100,
                               seed: int = 0, tolerance: float = 1e-10,
                               dual_tolerance: float = 1e-8) -> dict:
    """Certify span{g_0..g_k} invariant under C* and its complement under C.

    Checks:

    * ``eigen-relation``: C* g_0 = g_0 / (1-gamma) on indices 0..N-window;
    * ``C* invariance``: relative least-squares distance of C* g_j from the
      span, on the same index window;
    * ``C invariance of complement``: for random f orthogonal to the span,
      ||P(Cf)|| / ||f||, with <Cf, g> computed as <f, C* g> exactly, so the
      infinite tail of Cf is accounted for.

    C* is applied with the exact tail moment (see :func:`adjoint_cesaro_apply`);
    the window only trims the top coefficients, which carry the truncated
    binomial recursion.
    """
    gamma = _check_gamma(gamma)
    if not 0 <= window <= N:
        raise ValueError("window must lie in 0..N")
    chain = gen_eigenvector_chain(gamma, k, N)
    G = np.column_stack([g.coeffs for g in chain])
    rows = slice(0, N - window + 1)
    checks = [check("eigen-relation", eigen_relation_residual(gamma, N, window), tolerance)]
    images = [adjoint_cesaro_apply(g, integral_moment(gamma, j)).coeffs for j, g in enumerate(chain)]
    worst = 0.0
    for img in images:
        c, *_ = np.linalg.lstsq(G[rows], img[rows], rcond=None)
        worst = max(worst, np.linalg.norm(G[rows] @ c - img[rows]) / np.linalg.norm(img[rows]))
    checks.append(check("C* invariance", worst, tolerance))

    gram = G.conj().T @ G
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        f = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
        f[N - window + 1 :] = 0.0
        f = f - G @ np.linalg.solve(gram, G.conj().T @ f)
        b = np.array([np.vdot(img, f) for img in images])  # <f, C* g_j> = <Cf, g_j>
        proj_sq = float(np.real(np.vdot(b, np.linalg.solve(gram, b))))
        worst = max(worst, math.sqrt(max(proj_sq, 0.0)) / np.linalg.norm(f))
    checks.append(check("C invariance of complement", worst, dual_tolerance))
    return certificate(f"span g_0..g_{k}, gamma={gamma}", checks, N=N, window=window, seed=seed,
                       excluded_band=[N - window + 1, N])


# ---------------------------------------------------------------------------
# non-standard subspaces


@dataclass(frozen=True)
class StandardSubspace:
    """L^2((a, inf), w dy); a = -inf is the whole space."""

    a: float

    def left_residual(self, h: Evaluable, probes) -> float:
        y = _away(np.asarray(probes, dtype=float), h.breakpoints())
        y = y[y < self.a]
        if y.size == 0:
            return 0.0
        return float(np.max(np.abs(h(y))))

    def contains(self, h: Evaluable, probes, tol: float = 1e-12) -> bool:
        return self.left_residual(h, probes) <= tol

    def generators(self):
        return ()

    def describe(self):
        return f"L2(({self.a}, inf), w)"


@dataclass(frozen=True)
class ShiftSubspace:
    """span{e^{conj(lam) y} on (-inf, T)} (+) L^2((T, inf), w dy).

    Invariant under every right shift: S_tau moves the window part to a
    multiple e^{-conj(lam) tau} of itself on (-inf, T) plus a piece supported
    in (T, inf).
    """

    T: float
    lam: complex

    def __post_init__(self):
        lam = complex(self.lam)
        if not lam.real > 0:
            raise ValueError("need Re(lam) > 0")
        object.__setattr__(self, "lam", lam)

    @property
    def exponent(self) -> complex:
        return self.lam.conjugate()

    def generator(self) -> Evaluable:
        return Window(-math.inf, self.T, ExpMonomial(self.exponent, 0))

    def generators(self):
        return (self.generator(),)

    def restriction_fit(self, h: Evaluable, probes):
        """Fit h = c e^{conj(lam) y} on probes below T; return (c, mixed residual)."""
        y = _away(np.asarray(probes, dtype=float), h.breakpoints())
        y = np.sort(y[y < self.T])
        if y.size == 0:
            return 0.0, 0.0
        e = np.exp(self.exponent * y)
        vals = h(y)
        anchor = int(np.argmax(np.abs(e)))  # fit at the probe nearest T
        c = vals[anchor] / e[anchor]
        return complex(c), mixed_residual(c * e, vals)

    def contains(self, h: Evaluable, probes, tol: float = 1e-12) -> bool:
        return self.restriction_fit(h, probes)[1] <= tol

    def describe(self):
        return f"span(e^(conj({self.lam}) y) on (-inf,{self.T})) + L2(({self.T}, inf), w)"


def _away(y, points, gap=1e-9):
    keep = np.ones(y.shape, dtype=bool)
    for p in points:
        keep &= np.abs(y - p) > gap
    return y[keep]


def classify_subspace(sub, probes, grid=None, width: float = 1.0, tol: float = 1e-12) -> str:
    """Classify a shift-invariant subspace as "standard" or "non-standard".

    The windows chi_(c, c+width) in the subspace determine the candidate
    edge a = min c.  The subspace is standard exactly when it is
    L^2((a, inf), w), i.e. when the set of member windows is an up-set and
    every generator vanishes left of a.
    """
    grid = np.arange(-20.0, 20.0, 0.25) if grid is None else np.asarray(grid)
    member = np.array([sub.contains(Window(c, c + width), probes, tol) for c in grid])
    if not member.any():
        edge = math.inf
    else:
        first = int(np.argmax(member))
        if not member[first:].all():
            return "non-standard"
        edge = -math.inf if first == 0 else float(grid[first])
    for g in sub.generators():
        if not StandardSubspace(edge).contains(g, probes, tol):
            return "non-standard"
    return "standard"


def _restricted_inner(f, g, T):
    fin, half = gauss_jacobi(64), tanh_sinh()

    def integrand(y):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return f(y) * np.conj(g(y)) * CANONICAL(y)

    pts = tuple(f.breakpoints()) + tuple(g.breakpoints())
    return complex(integrate(integrand, -math.inf, T, pts, fin, half))


def nonstandard_subspace_certificate(lam, T: float = 0.0, t_samples=(0.5, 1.0, 2.0), probes=None,
                                     seed: int = 0, tolerance: float = 1e-12) -> dict:
    """Membership and non-standardness certificate for :class:`ShiftSubspace`.

    For each tau, S_tau applied to the window generator must restrict to
    e^{-conj(lam) tau} e^{conj(lam) y} below T; S_tau of a tail function must
    vanish below T.  Non-standardness: the generator is a member supported
    to -inf, while chi_(T-1, T) keeps more than 10% of its norm after
    projection onto the subspace, and its projection residual is orthogonal
    to the subspace, so the subspace is neither the whole space nor any
    L^2((a, inf), w).
    """
    sub = ShiftSubspace(T, lam)
    rng = np.random.default_rng(seed)
    probes = np.asarray(probes) if probes is not None else np.concatenate(
        [rng.uniform(T - 15, T, 200), rng.uniform(T, T + 5, 50)])
    gen = sub.generator()
    tail = Window(T, T + 1.0)
    checks = []
    for tau in t_samples:
        c, r = sub.restriction_fit(shift_apply(tau, gen), probes)
        expected = np.exp(-sub.exponent * tau)
        checks.append(check(f"membership S_tau generator tau={tau}", max(r, abs(c - expected)), tolerance))
        c2, r2 = sub.restriction_fit(shift_apply(tau, tail), probes)
        checks.append(check(f"membership S_tau tail tau={tau}", max(r2, abs(c2)), tolerance))

    gen_norm = math.sqrt(weighted_norm_sq(gen))
    checks.append(check("nonzero member supported to -inf", 0.0, 0.0, passed=gen_norm > 0, norm=gen_norm))
    probe = Window(T - 1.0, T)
    e_win = gen
    coef = _restricted_inner(probe, e_win, T) / _restricted_inner(e_win, e_win, T)
    residual_fn = probe + (-coef) * e_win
    probe_norm = math.sqrt(weighted_norm_sq(probe))
    resid_norm = math.sqrt(max(weighted_norm_sq(residual_fn), 0.0))
    ratio = resid_norm / probe_norm
    checks.append(check("window chi_(T-1,T) outside subspace", ratio, 0.1, passed=ratio > 0.1,
                        relative_distance=ratio))
    orth = abs(_restricted_inner(residual_fn, e_win, T)) / (resid_norm * gen_norm)
    checks.append(check("orthogonal witness below T", orth, 1e-10))
    checks.append(check("classified non-standard", 0.0, 0.0,
                        passed=classify_subspace(sub, probes) == "non-standard"))
    return certificate(sub.describe(), checks, seed=seed)


def standard_regression(edges=(-math.inf, -3.0, 0.0, 2.0, 5.0), seed: int = 0) -> list:
    """Classification of a fixed set of standard subspaces (all must be standard)."""
    rng = np.random.default_rng(seed)
    probes = rng.uniform(-25, 25, 2000)
    return [(a, classify_subspace(StandardSubspace(a), probes)) for a in edges]


# ---------------------------------------------------------------------------
# twisted Laplace transform and model spaces


def twisted_laplace(f: Evaluable, s, T: float = 0.0, tol: float | None = None) -> complex:
    """int_{-T}^inf e^{-s u} f(-u) du = int_{-inf}^T e^{s y} f(y) dy.

    ``f`` must be supported in (-inf, T).  With ``tol`` the doubling error
    estimate is checked against ``tol * max(1, |value|)``.
    """
    s = complex(s)
    if not s.real > 0:
        raise ValueError("need Re(s) > 0")

    def integrand(y):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return np.exp(s * y) * f(y)

    # panel the decaying stretch so oscillation in e^{s y} is resolved by
    # Gauss-Legendre rather than left to the half-line rule
    span = min(40.0 / s.real, 400.0)
    h = max(span / 200, min(2.0, 2 * math.pi / (abs(s.imag) + 1)))
    panels = [T - h * k for k in range(1, int(span / h) + 1)]

    def run(fin, half):
        return complex(integrate(integrand, -math.inf, T, tuple(f.breakpoints()) + tuple(panels), fin, half))

    value = run(gauss_jacobi(64), tanh_sinh())
    if tol is not None:
        err = abs(run(gauss_jacobi(128), tanh_sinh().refined()) - value)
        if err > tol * max(1.0, abs(value)):
            raise QuadratureError(f"twisted Laplace error estimate {err:.2e} exceeds {tol:.2e}", estimate=err)
    return value


def blaschke_eval(s, zeros: SpectralData) -> complex:
    """B(s) = prod ((s - lam)/(s + conj(lam)))^m over the zeros (lam, m)."""
    s = complex(s)
    out = 1.0 + 0j
    for lam, mult in zeros.points:
        out *= ((s - lam) / (s + lam.conjugate())) ** mult
    return out


@dataclass(frozen=True)
class KernelFunction:
    """s -> 1 / (s + conj(lam))^power on the right half-plane."""

    lam: complex
    power: int

    def __call__(self, s):
        return 1.0 / (np.asarray(s, dtype=complex) + complex(self.lam).conjugate()) ** self.power


def model_space_kernel_basis(zeros: SpectralData) -> list:
    """Rational basis {1/(s + conj(lam))^{j+1}, j < m} of the model space K_B."""
    return [KernelFunction(lam, j + 1) for lam, mult in zeros.points for j in range(mult)]


def model_space_certificate(zeros: SpectralData, s_grid=None, seed: int = 0) -> dict:
    """Inner-function and kernel-span checks for a finite Blaschke product.

    * |B(iy)| = 1 on sampled imaginary-axis points;
    * B(lam) = 0 at every zero;
    * the twisted Laplace transform of e^{conj(lam) y} on (-inf, 0) lies in
      span of the kernel basis (least-squares residual on an s grid).
    """
    rng = np.random.default_rng(seed)
    ys = rng.uniform(-20, 20, 50)
    unimod = max(abs(abs(blaschke_eval(1j * y, zeros)) - 1.0) for y in ys)
    at_zeros = max(abs(blaschke_eval(lam, zeros)) for lam, _ in zeros.points)
    s_grid = np.asarray(s_grid) if s_grid is not None else rng.uniform(0.2, 3, 12) + 1j * rng.uniform(-3, 3, 12)
    basis = model_space_kernel_basis(zeros)
    K = np.column_stack([k(s_grid) for k in basis])
    worst = 0.0
    for lam, _ in zeros.points:
        f = Window(-math.inf, 0.0, ExpMonomial(lam.conjugate(), 0))
        vals = np.array([twisted_laplace(f, s) for s in s_grid])
        c, *_ = np.linalg.lstsq(K, vals, rcond=None)
        worst = max(worst, float(np.linalg.norm(K @ c - vals) / np.linalg.norm(vals)))
    checks = [
        check("|B| = 1 on imaginary axis", unimod, 1e-12),
        check("B vanishes at zeros", at_zeros, 1e-12),
        check("twisted Laplace in kernel span", worst, 1e-10),
    ]
    return certificate(f"model space of Blaschke product with zeros {list(zeros.points)}", checks, seed=seed)


# ---------------------------------------------------------------------------
# non-unicellularity


def non_unicellularity_certificate(lam1, lam2, t_samples=(0.1, 1.0, 3.0), seed: int = 0,
                                   invariance_tolerance: float = 1e-10,
                                   gram_tolerance: float = GRAM_TOLERANCE) -> dict:
    """Two incomparable invariant subspaces from distinct exponentials.

    N_i = span{e^{lam_i y}} is shift invariant, so its orthocomplement M_i is
    invariant for the adjoint shifts.  If e_1 and e_2 are independent,
    neither N_i contains the other, hence neither M_i contains the other and
    the lattice is not a chain.
    """
    lam1, lam2 = complex(lam1), complex(lam2)
    if lam1 == lam2:
        raise ValueError("the two spectral points must differ")
    spec = SpectralData(((lam1, 1), (lam2, 1)))
    basis = build_line_subspace(spec)
    rng = np.random.default_rng(seed)
    probes = rng.uniform(-10, 5, 500)
    checks = []
    for lam in (lam1, lam2):
        r = max(shift_reconstruction_residual(lam, 0, t, probes) for t in t_samples)
        checks.append(check(f"shift invariance of span e_{lam}", r, invariance_tolerance))
    det = basis.relative_determinant()
    checks.append(check("relative Gram determinant", det, gram_tolerance, passed=det > gram_tolerance))
    return certificate(f"span e_{lam1} vs span e_{lam2}", checks, gram=basis.gram, seed=seed)


def finite_closedness_demo(n_max: int = 4) -> list:
    """Lower bound of the restriction to (-inf, 0) on span{e_{1}, ..., e_{n^2}}.

    For each finite span the smallest generalized eigenvalue of
    (G_-, G) is positive, so the restricted span is closed (automatic in
    finite dimension); its decay with n mirrors the failure in the limit.
    Rows are (n, smallest eigenvalue).
    """
    from scipy.linalg import eigh

    rows = []
    for n in range(1, n_max + 1):
        fs = [ExpMonomial(float(j * j), 0) for j in range(1, n + 1)]
        G = np.array([[line_inner(a, b).real for b in fs] for a in fs])
        Gm = np.array([[line_inner(a, b, interval=(-math.inf, 0.0)).real for b in fs] for a in fs])
        rows.append((n, float(eigh(Gm, G, eigvals_only=True).min())))
    return rows

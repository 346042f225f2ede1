"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from cesarolab import fractional, hardy, invariant, line_model, semigroup
from cesarolab.quadrature import laplace_resolvent_entry

from conftest import ACCEPTANCE_LINES


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


class timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_cogenerator_identity():
    with timer() as clock:
        N = 128
        I = hardy.identity(N)
        V = semigroup.cogenerator_matrix(N)
        Cs = hardy.cesaro_adjoint_matrix(N)
        A, T = semigroup.generator_matrix(N), semigroup.resolvent_T_matrix(N)
        r1 = float(np.max(np.abs(((V - I) + 2.0 * Cs).entries)))
        r2 = hardy.matmul(A - I, T).max_abs_diff(I)
    ok = r1 <= 1e-12 and r2 <= 1e-12 and clock.elapsed < 1
    record(1, ok, f"|(V-I)+2C*|={r1:.1e}, |(A-I)T-I|={r2:.1e}, {clock.elapsed:.2f}s")


def test_criterion_02_resolvent_quadrature():
    with timer() as clock:
        worst = max(abs(laplace_resolvent_entry(n, j) - 1 / (n + 1)) for n in range(33) for j in range(n + 1))
    ok = worst <= 1e-8 and clock.elapsed < 5
    record(2, ok, f"max |quad - 1/(n+1)| = {worst:.1e} (sign +C*), {clock.elapsed:.2f}s")


def test_criterion_03_fractional_powers():
    with timer() as clock:
        N = 64
        grid = [1 / 3, 1 / 2, 2 / 3, 1.0, 1.5]
        sums = sorted({a + b for a in grid for b in grid} | set(grid))
        mats = {b: fractional.frac_cesaro_matrix(b, N, "integral") for b in sums}
        r_one = fractional.frac_cesaro_matrix(1, N).max_abs_diff(hardy.cesaro_matrix(N))
        r_half = hardy.matmul(mats[0.5], mats[0.5]).max_abs_diff(mats[1.0])
        r_law = max(hardy.matmul(mats[a], mats[b]).max_abs_diff(mats[a + b]) for a in grid for b in grid)
        r_agree = max(fractional.method_agreement(b, N, 24)[0] for b in (0.5, 0.25, 1 / 3, 2.0))
    ok = r_one <= 1e-10 and r_half <= 1e-9 and r_law <= 1e-8 and r_agree <= 1e-8 and clock.elapsed < 30
    record(3, ok, f"M_1-C {r_one:.1e}, M_1/2^2-M_1 {r_half:.1e}, law {r_law:.1e}, "
                  f"methods(i-j<=24) {r_agree:.1e}, {clock.elapsed:.1f}s")


def test_criterion_04_adjoint_formula():
    worst = max(semigroup.adjoint_composition_matrix(t, 64).max_abs_diff(semigroup.composition_matrix(t, 64).H)
                for t in (0.1, 1.0, 5.0))
    record(4, worst <= 1e-13, f"max |C*_t - C_t^H| = {worst:.1e}")


def test_criterion_05_norm_estimate():
    orders = [32, 64, 128, 256, 512]
    details, ok = [], True
    for t in (0.5, 1.0):
        rows = semigroup.norm_convergence_curve(t, orders)
        sig = [s for _, s, _ in rows]
        bound = math.exp(t / 2)
        ok &= all(s <= bound * (1 + 1e-8) for s in sig)
        ok &= all(b >= a - 1e-12 for a, b in zip(sig, sig[1:]))
        ok &= rows[-1][2] >= 0.8
        details.append(f"t={t}: ratio(N)=" + ",".join(f"{r:.4f}" for _, _, r in rows))
    record(5, ok, "; ".join(details))


def test_criterion_06_intertwining():
    with timer() as clock:
        probes = np.random.default_rng(0).uniform(-10, 5, 1000)
        funcs = [line_model.ExpMonomial(1 + 1j, 2), line_model.ExpMonomial(0.5, 0), line_model.ExpMonomial(-1, 3),
                 line_model.Window(0.0, 1.0), line_model.Window(-3.0, 2.0, line_model.ExpMonomial(2 - 1j, 1))]
        worst = max(line_model.verify_intertwining(t, f, probes) for f in funcs for t in (0.1, 1.0, 3.0))
    ok = worst <= 1e-12 and clock.elapsed < 1
    record(6, ok, f"max residual {worst:.1e} over 1000 probes (seed 0), {clock.elapsed:.2f}s")


def test_criterion_07_finite_codimension():
    probes = np.random.default_rng(0).uniform(-10, 5, 500)
    shift = max(invariant.shift_reconstruction_residual(lam, k, t, probes)
                for lam in (1.0, 1 + 1j, 0.3, 4.0) for k in range(5) for t in np.linspace(0, 5, 11))
    chain = max(invariant.chain_residual(g, k, 256) for g in (0.0, 0.3, 0.2 - 0.3j, 0.45) for k in range(5))
    eig = max(invariant.eigen_relation_residual(g, 256, 16) for g in (0.0, 0.3, 0.2 - 0.3j, 0.45))
    ok = shift <= 1e-12 and chain <= 1e-13 and eig <= 1e-10
    record(7, ok, f"shift expansion {shift:.1e}, chain {chain:.1e}, eigen-relation {eig:.1e} (window 0..240)")


def test_criterion_08_non_unicellularity():
    cert = invariant.non_unicellularity_certificate(1, 2)
    by_name = {c["name"]: c for c in cert["checks"]}
    det = by_name["relative Gram determinant"]["residual"]
    inv = max(c["residual"] for n, c in by_name.items() if n.startswith("shift invariance"))
    ok = cert["pass"] and det > 1e-6 and inv <= 1e-10
    record(8, ok, f"relative Gram det {det:.4f}, invariance residual {inv:.1e}")


def test_criterion_09_nonstandard_subspace():
    lam = 1 + 1j
    cert = invariant.nonstandard_subspace_certificate(lam, 0.0, t_samples=(0.5, 1.0, 2.0))
    member = max(c["residual"] for c in cert["checks"] if c["name"].startswith("membership"))
    refuted = all(c["pass"] for c in cert["checks"] if not c["name"].startswith("membership"))
    regression = all(cls == "standard" for _, cls in invariant.standard_regression())
    gen = invariant.ShiftSubspace(0.0, lam).generator()
    rng = np.random.default_rng(0)
    s = rng.uniform(0.2, 3, 20) + 1j * rng.uniform(-5, 5, 20)
    lap = max(abs(invariant.twisted_laplace(gen, si) - 1 / (si + lam.conjugate())) for si in s)
    ok = member <= 1e-12 and refuted and regression and lap <= 1e-9
    record(9, ok, f"membership {member:.1e}, non-standard {refuted}, regression standard {regression}, "
                  f"twisted Laplace {lap:.1e}")


def test_criterion_10_muntz():
    rows = line_model.muntz_ratio_table(6)
    ratios = [r for _, _, r in rows]
    ok = all(a > b for a, b in zip(ratios, ratios[1:])) and ratios[2] <= 0.05
    record(10, ok, "ratios " + ", ".join(f"{r:.2e}" for r in ratios))


def test_criterion_11_weight_utilities():
    y, w = line_model.weight_profile_rows(-6, 3, 0.01)
    monotone = bool(np.all(np.diff(w) < 0))
    w0 = line_model.weight_eval(0.0)
    left = abs(line_model.weight_eval(-20.0) - math.e**2)
    ind = line_model.domar_nonstandard_indicator(line_model.CANONICAL, -np.logspace(math.log10(5), 4, 40))
    trend = bool(np.all(np.diff(ind["ratio"]) > 0)) and abs(ind["ratio"][-1]) < 1e-3
    running = min(ind["running_min"])
    ok = monotone and w0 == 1.0 and left <= 1e-6 and trend and running > -1
    record(11, ok, f"monotone {monotone}, w(0)={w0!r}, |w(-20)-e^2|={left:.1e}, "
                   f"indicator running min {running:.3f}, ratio at y=-1e4 {ind['ratio'][-1]:.1e}")

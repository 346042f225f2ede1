"""Command-line front end: matrices, identity checks, weight data and demos.

Exit codes: 0 when every requested check passes, 1 when some check fails
or a computation cannot meet its tolerance (a JSON report is printed either
way), 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import fractional, hardy, invariant, line_model, semigroup
from .errors import CancellationError, ConvergenceError, QuadratureError
from .serialize import to_csv, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accept "a+bi", "a+bj", "bi", "a" (spaces ignored)."""
    s = str(text).replace(" ", "").lower().replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    s = s.replace("+j", "+1j").replace("-j", "-1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def _float_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Validated arguments for one invocation."""

    command: str
    target: str
    n: int
    t: float
    beta: complex
    lam: complex
    gamma: complex
    method: str
    tolerance: float | None
    fmt: str
    out: str | None
    seed: int

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cfg = cls(args.command, args.target, args.n, args.t, args.beta, args.lam, args.gamma,
                  args.method, args.tolerance, args.format, args.out, args.seed)
        if cfg.n < 0:
            raise UsageError(f"--n must be non-negative, got {cfg.n}")
        if not cfg.t >= 0:
            raise UsageError(f"--t must be non-negative, got {cfg.t}")
        if not cfg.beta.real > 0:
            raise UsageError(f"--beta needs Re(beta) > 0, got {cfg.beta}")
        if not cfg.lam.real > 0.5 and cfg.command == "matrix" and cfg.target in ("frac", "sqrt"):
            raise UsageError(f"--lam needs Re(lam) > 1/2, got {cfg.lam}")
        if not cfg.gamma.real < 0.5:
            raise UsageError(f"--gamma needs Re(gamma) < 1/2, got {cfg.gamma}")
        if cfg.tolerance is not None and not cfg.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report(command: str, checks: list, seed=None, **context) -> dict:
    rep = {"command": command, "pass": all(c["pass"] for c in checks), "checks": checks, **context}
    if seed is not None:
        rep["seed"] = seed
    return rep


def _emit_report(rep: dict, out) -> int:
    _emit(invariant.certificate_json(rep, indent=2), out)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# matrix


def _matrix(cfg: RunConfig):
    N = cfg.n
    if cfg.target == "cesaro":
        return hardy.cesaro_matrix(N)
    if cfg.target == "adjoint":
        return hardy.cesaro_adjoint_matrix(N)
    if cfg.target == "comp":
        return semigroup.composition_matrix(cfg.t, N)
    if cfg.target == "generator":
        return semigroup.generator_matrix(N)
    if cfg.target == "resolvent":
        return semigroup.resolvent_T_matrix(N)
    if cfg.target == "cogenerator":
        return semigroup.cogenerator_matrix(N)
    tol = cfg.tolerance or 1e-10
    if cfg.target == "frac":
        return fractional.resolvent_power_matrix(cfg.beta, N, cfg.lam, cfg.method, tol)
    if cfg.target == "sqrt":
        return fractional.square_root_matrix(cfg.lam, N, tolerance=tol)
    raise UsageError(f"unknown matrix {cfg.target!r}")


def cmd_matrix(cfg: RunConfig) -> int:
    op = _matrix(cfg)
    _emit(to_csv(op) if cfg.fmt == "csv" else to_json(op), cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# checks

check = invariant.check


def check_identities(cfg: RunConfig) -> dict:
    N, tol = cfg.n, cfg.tolerance or 1e-12
    I = hardy.identity(N)
    A, T = semigroup.generator_matrix(N), semigroup.resolvent_T_matrix(N)
    V, Cs = semigroup.cogenerator_matrix(N), hardy.cesaro_adjoint_matrix(N)
    t = cfg.t if cfg.t > 0 else 1.0
    comp = semigroup.composition_matrix(t, N)
    checks = [
        check("V - I + 2 C*", float(np.max(np.abs((V - I + 2.0 * Cs).entries))), tol),
        check("(A - I) T - I", hardy.matmul(A - I, T).max_abs_diff(I), tol),
        check("T (A - I) - I", hardy.matmul(T, A - I).max_abs_diff(I), tol),
        check("C* - C^H", Cs.max_abs_diff(hardy.cesaro_matrix(N).H), tol),
        check(f"adjoint composition - composition^H (t={t})",
              semigroup.adjoint_composition_matrix(t, N).max_abs_diff(comp.H), tol),
        check("semigroup law (0.3, 0.7)", semigroup.semigroup_law_residual(0.3, 0.7, N), tol),
        check(f"column sums of composition (t={t})", float(np.max(np.abs(comp.entries.sum(axis=0) - 1))), tol),
    ]
    return _report("check identities", checks, n=N)


def check_fractional(cfg: RunConfig) -> dict:
    N = cfg.n
    grid = [1 / 3, 1 / 2, 2 / 3, 1.0, 1.5]
    mats = {b: fractional.frac_cesaro_matrix(b, N, "integral") for b in grid}
    for a in grid:
        for b in grid:
            s = a + b
            if s not in mats:
                mats[s] = fractional.frac_cesaro_matrix(s, N, "integral")
    C = hardy.cesaro_matrix(N)
    worst = max(hardy.matmul(mats[a], mats[b]).max_abs_diff(mats[a + b]) for a in grid for b in grid)
    half = mats[0.5]
    diff, bound = fractional.method_agreement(0.5, N, min(24, N))
    checks = [
        check("M_1 - Cesaro", fractional.frac_cesaro_matrix(1, N).max_abs_diff(C), 1e-10),
        check("M_1/2 M_1/2 - M_1", hardy.matmul(half, half).max_abs_diff(mats[1.0]), 1e-9),
        check("semigroup law on beta grid", worst, 1e-8),
        check("direct sum vs integral, i-j <= 24", diff, 1e-8, direct_sum_bound=bound),
    ]
    return _report("check fractional", checks, n=N, beta_grid=grid)


def check_intertwining(cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    probes = rng.uniform(-10, 5, 1000)
    funcs = {
        "exp-monomial(1+i,2)": line_model.ExpMonomial(1 + 1j, 2),
        "exp-monomial(0.5,0)": line_model.ExpMonomial(0.5, 0),
        "window(0,1)": line_model.Window(0.0, 1.0),
        "window(-3,2)*exp-monomial(2-i,1)": line_model.Window(-3.0, 2.0, line_model.ExpMonomial(2 - 1j, 1)),
    }
    tol = cfg.tolerance or 1e-12
    checks = [
        check(f"W sigma_t W^-1 f - S_t f, f={name}, t={t}", line_model.verify_intertwining(t, f, probes), tol)
        for name, f in funcs.items()
        for t in (0.1, 1.0, 3.0)
    ]
    return _report("check intertwining", checks, seed=cfg.seed, probes=len(probes),
                   residual="|lhs - rhs| / max(1, |rhs|)")


def check_shift_invariance(cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    probes = rng.uniform(-10, 5, 500)
    lams = (1.0, 1 + 1j, 0.3, 4.0)
    worst = max(invariant.shift_reconstruction_residual(lam, k, t, probes)
                for lam in lams for k in range(5) for t in (0.0, 0.5, 1.0, 2.5, 5.0))
    N = cfg.n
    gammas = (0.0, 0.3, 0.2 - 0.3j, -1 + 2j)
    chain = max(invariant.chain_residual(g, k, N) for g in gammas for k in range(5))
    checks = [
        check("shift expansion (k <= 4, t <= 5)", worst, 1e-12),
        check("chain (A - gamma) g_k = k g_{k-1}, relative", chain, 1e-13),
    ]
    window = min(16, N)
    cert = invariant.verify_cesaro_coinvariance(cfg.gamma, 1, N, window=window, seed=cfg.seed)
    checks.extend(cert["checks"])
    return _report("check shift-invariance", checks, seed=cfg.seed, n=N, gamma=cfg.gamma, window=window)


def check_norm(cfg: RunConfig, orders, times) -> dict:
    checks, curves = [], {}
    for t in times:
        rows = semigroup.norm_convergence_curve(t, orders)
        curves[str(t)] = [{"N": N, "sigma": s, "ratio": r} for N, s, r in rows]
        sig = [s for _, s, _ in rows]
        bound = math.exp(t / 2)
        excess = max(0.0, max(s / (bound * (1 + 1e-8)) - 1 for s in sig))
        drops = max([0.0] + [sig[i] - sig[i + 1] for i in range(len(sig) - 1)])
        checks.append(check(f"sigma <= e^(t/2)(1+1e-8), t={t}", excess, 0.0))
        checks.append(check(f"nondecreasing in N, t={t}", drops, 1e-12))
        if t > 0:
            ratio = rows[-1][2]
            checks.append(check(f"sigma / e^(t/2) >= 0.8 at N={orders[-1]}, t={t}", 0.8 - ratio, 0.0,
                                passed=ratio >= 0.8, ratio=ratio))
    return _report("check norm", checks, curves=curves)


# ---------------------------------------------------------------------------
# weight and demos


WEIGHTS = {
    "canonical": line_model.WeightFn.canonical,
    "exponential": line_model.WeightFn.exponential,
    "constant": line_model.WeightFn.constant,
    "gaussian-growth": line_model.WeightFn.gaussian_growth,
}


def cmd_weight(cfg: RunConfig, args) -> int:
    if cfg.target == "plot":
        try:
            _emit(line_model.weight_profile_csv(args.y_from, args.y_to, args.step), cfg.out)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return EXIT_OK
    w = WEIGHTS[args.weight]()
    indicator = line_model.domar_nonstandard_indicator(w, -np.logspace(math.log10(5), 3, 25))
    rigidity = line_model.domar_rigidity_check(w, np.linspace(1, 50, 99))
    running = indicator["running_min"][-1]
    rep = {"command": "weight domar", "weight": w.tag, "indicator": indicator, "rigidity": rigidity,
           "indicator_running_min": running}
    _emit(json.dumps(rep, indent=2), cfg.out)
    return EXIT_OK


def _parse_zeros(text: str):
    pts = []
    for item in text.split(","):
        lam, _, mult = item.partition(":")
        pts.append((parse_complex(lam), int(mult) if mult else 1))
    return invariant.SpectralData(tuple(pts))


def demo(cfg: RunConfig, args) -> dict:
    if cfg.target == "non-unicellular":
        return invariant.non_unicellularity_certificate(args.lam1, args.lam2, seed=cfg.seed)
    if cfg.target == "muntz":
        rows = line_model.muntz_ratio_table(args.n_max)
        ratios = [r for _, _, r in rows]
        drops = max(ratios[i + 1] - ratios[i] for i in range(len(ratios) - 1)) if len(ratios) > 1 else -1.0
        checks = [check("ratios strictly decreasing", drops, 0.0, passed=drops < 0)]
        if len(ratios) >= 3:
            checks.append(check("ratio(3) <= 0.05", ratios[2], 0.05))
        return _report("demo muntz", checks,
                       table=[{"n": n, "lambda": lam, "ratio": r} for n, lam, r in rows],
                       closedness=[{"n": n, "min_eigenvalue": v} for n, v in invariant.finite_closedness_demo(4)])
    if cfg.target == "nonstandard-subspace":
        cert = invariant.nonstandard_subspace_certificate(cfg.lam, args.edge, seed=cfg.seed)
        rng = np.random.default_rng(cfg.seed)
        s = rng.uniform(0.2, 3.0, 20) + 1j * rng.uniform(-5, 5, 20)
        sub = invariant.ShiftSubspace(args.edge, cfg.lam)
        g = sub.generator()
        lam_bar = complex(cfg.lam).conjugate()
        err = max(abs(invariant.twisted_laplace(g, si, args.edge)
                      - np.exp(args.edge * (si + lam_bar)) / (si + lam_bar)) for si in s)
        cert["checks"].append(check("twisted Laplace of generator vs kernel", err, 1e-9))
        regression = invariant.standard_regression(seed=cfg.seed)
        cert["checks"].append(check("standard regression set classified standard", 0.0, 0.0,
                                    passed=all(c == "standard" for _, c in regression)))
        cert["pass"] = all(c["pass"] for c in cert["checks"])
        return cert
    if cfg.target == "model-space":
        return invariant.model_space_certificate(_parse_zeros(args.zeros), seed=cfg.seed)
    raise UsageError(f"unknown demo {cfg.target!r}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=64, help="truncation order N (default 64)")
    common.add_argument("--t", type=float, default=1.0, help="semigroup time t >= 0")
    common.add_argument("--beta", type=parse_complex, default=0.5, help="power beta, Re(beta) > 0")
    common.add_argument("--lam", type=parse_complex, default=1.0, help="shift lambda, e.g. 1+0.5i")
    common.add_argument("--gamma", type=parse_complex, default=0.3, help="disc eigenvalue parameter, Re < 1/2")
    common.add_argument("--method", choices=fractional.METHODS, default="auto")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized probes")

    p = argparse.ArgumentParser(prog="cesarolab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("matrix", parents=[common], help="emit an operator matrix")
    m.add_argument("target", choices=("cesaro", "adjoint", "comp", "generator", "resolvent",
                                      "cogenerator", "frac", "sqrt"))

    c = sub.add_parser("check", parents=[common], help="run identity checks")
    c.add_argument("target", choices=("identities", "fractional", "intertwining", "shift-invariance", "norm"))
    c.add_argument("--orders", type=_int_list, default=[32, 64, 128, 256, 512],
                   help="truncation orders for the norm curve")
    c.add_argument("--times", type=_float_list, default=[0.5, 1.0], help="times for the norm curve")

    w = sub.add_parser("weight", parents=[common], help="weight data and diagnostics")
    w.add_argument("target", choices=("plot", "domar"))
    w.add_argument("--from", dest="y_from", type=float, default=-6.0)
    w.add_argument("--to", dest="y_to", type=float, default=3.0)
    w.add_argument("--step", type=float, default=0.01)
    w.add_argument("--weight", choices=tuple(WEIGHTS), default="canonical")

    d = sub.add_parser("demo", parents=[common], help="invariant-subspace demonstrations")
    d.add_argument("target", choices=("non-unicellular", "muntz", "nonstandard-subspace", "model-space"))
    d.add_argument("--lam1", type=parse_complex, default=1.0)
    d.add_argument("--lam2", type=parse_complex, default=2.0)
    d.add_argument("--edge", type=float, default=0.0, help="edge T of the window part")
    d.add_argument("--n-max", dest="n_max", type=int, default=6)
    d.add_argument("--zeros", default="1+1i:2,2", help="zeros as lam[:multiplicity],...")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        if cfg.command == "matrix":
            return cmd_matrix(cfg)
        if cfg.command == "weight":
            return cmd_weight(cfg, args)
        if cfg.command == "check":
            if cfg.target == "norm":
                if not args.orders or any(o < 0 for o in args.orders) or any(t < 0 for t in args.times):
                    raise UsageError("--orders must be non-negative and --times non-negative")
                rep = check_norm(cfg, sorted(args.orders), args.times)
            else:
                rep = {"identities": check_identities, "fractional": check_fractional,
                       "intertwining": check_intertwining,
                       "shift-invariance": check_shift_invariance}[cfg.target](cfg)
            return _emit_report(rep, cfg.out)
        if cfg.command == "demo":
            return _emit_report(demo(cfg, args), cfg.out)
    except (UsageError, ValueError) as exc:
        print(f"cesarolab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CancellationError, QuadratureError, ConvergenceError) as exc:
        rep = {"command": f"{args.command} {args.target}", "pass": False,
               "error": type(exc).__name__, "message": str(exc)}
        _emit(json.dumps(rep, indent=2), None)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

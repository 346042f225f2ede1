import math

import numpy as np
import pytest
from scipy.special import gamma

from cesarolab.errors import QuadratureError
from cesarolab.quadrature import (
    QuadratureRule,
    default_rule,
    gamma_kernel_exact,
    gauss_jacobi,
    gauss_laguerre,
    integrate,
    integrate_gamma_kernel,
    kernel_rule,
    laplace_resolvent_entry,
    log_integrate,
    tanh_sinh,
)


def test_rule_validation():
    with pytest.raises(ValueError):
        QuadratureRule("tanh-sinh", [2.0, 1.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        QuadratureRule("tanh-sinh", [1.0, 2.0], [1.0, -1.0])
    with pytest.raises(ValueError):
        QuadratureRule("simpson", [1.0], [1.0])
    r = default_rule()
    assert r.kind == "gauss-laguerre" and r.count == 64
    assert np.all(np.diff(r.nodes) > 0) and np.all(r.weights > 0)


def test_refined_rules_grow():
    for r in (gauss_laguerre(16), tanh_sinh(65), gauss_jacobi(8)):
        assert r.refined().count > r.count
        assert r.refined().kind == r.kind


@pytest.mark.parametrize("lam,beta,m,exact", [
    (1, 1, 0, 1.0),
    (1, 1, 2, 1 / 3),
    (2, 0.5, 0, math.sqrt(math.pi / 2)),
])
def test_kernel_examples(lam, beta, m, exact):
    for rule in (None, tanh_sinh()):
        assert integrate_gamma_kernel(lam, beta, m, rule) == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("lam", [1, 1 + 1j, 3])
def test_m0_matches_closed_form(beta, lam):
    exact = gamma_kernel_exact(lam, beta)
    assert exact == pytest.approx(gamma(beta) * lam ** (-beta))
    value, err = integrate_gamma_kernel(lam, beta, 0, full_output=True)
    assert abs(value - exact) <= 1e-12 * abs(exact)
    assert err <= 1e-10


@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("lam", [1, 1 + 1j, 3])
def test_doubling_escalation_reaches_floor(beta, lam):
    exact = gamma_kernel_exact(lam, beta)
    errs = []
    for n in (17, 33, 65, 129, 257):
        rule = tanh_sinh(n, 6.0, 3.5)
        errs.append(abs(integrate_gamma_kernel(lam, beta, 0, rule) - exact) / abs(exact))
    floor = 1e-12
    for a, b in zip(errs, errs[1:]):
        assert b <= a or max(a, b) <= floor
    assert errs[-1] <= floor


def test_complex_power_branch():
    lam, beta = -0.2 + 3j, 0.7 - 0.4j
    for good in (0.5 + 3j, 1 - 1j, 2.0):
        assert integrate_gamma_kernel(good, beta, 0) == pytest.approx(gamma(beta) * good ** (-beta), rel=1e-12)
    value = integrate_gamma_kernel(0.5 + 3j, beta, 0, kernel_rule(beta, 0.5 + 3j))
    assert value == pytest.approx(gamma(beta) * (0.5 + 3j) ** (-beta), rel=1e-12)
    with pytest.raises(ValueError):
        integrate_gamma_kernel(lam, beta)


def test_tolerance_failure_reports_estimate():
    with pytest.raises(QuadratureError) as exc:
        integrate_gamma_kernel(1, 0.05, 3, gauss_laguerre(3), tol=1e-14)
    assert exc.value.estimate is not None and exc.value.estimate > 1e-14


def test_resolvent_entries_small():
    assert laplace_resolvent_entry(0, 0) == pytest.approx(1, abs=1e-14)
    assert laplace_resolvent_entry(3, 1) == pytest.approx(0.25, abs=1e-12)
    assert abs(laplace_resolvent_entry(10, 0) - 1 / 11) <= 1e-9
    with pytest.raises(ValueError):
        laplace_resolvent_entry(2, 3)


def test_resolvent_entries_all_small_orders():
    worst = max(abs(laplace_resolvent_entry(n, j) - 1 / (n + 1)) for n in range(33) for j in range(n + 1))
    assert worst <= 1e-8


def test_generic_integration():
    assert integrate(lambda x: np.exp(-x * x), -math.inf, math.inf) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert integrate(lambda x: np.where(x < 1, 1.0, 0.0), 0, 3, breakpoints=(1,)) == pytest.approx(1, rel=1e-14)
    assert integrate(np.exp, -math.inf, 0) == pytest.approx(1, rel=1e-13)
    assert integrate(np.exp, 1, 1) == 0
    v = log_integrate(lambda y: 100 * y - np.exp(y), -math.inf, math.inf, breakpoints=(math.log(100),))
    assert v == pytest.approx(math.lgamma(100), rel=1e-13)

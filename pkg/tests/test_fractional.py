import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cesarolab.errors import CancellationError, QuadratureError
from cesarolab.fractional import (
    FracPowerSpec,
    alternating_sum_entries,
    extended_precision_entries,
    frac_cesaro_matrix,
    integral_entries,
    integral_rule,
    method_agreement,
    phillips_apply,
    resolvent_power_matrix,
    semigroup_property_residual,
    square_root_matrix,
)
from cesarolab.hardy import cesaro_adjoint_matrix, cesaro_matrix, matmul
from cesarolab.quadrature import tanh_sinh


def brute(beta, N, lam=1, dps=60):
    """High-precision alternating sum, entry by entry."""
    with mpmath.workdps(dps):
        b, l = mpmath.mpmathify(beta), mpmath.mpmathify(lam)
        M = np.zeros((N + 1, N + 1), dtype=complex)
        for i in range(N + 1):
            for j in range(i + 1):
                s = mpmath.fsum((-1) ** k * math.comb(i - j, k) * mpmath.power(l + j + k, -b)
                                for k in range(i - j + 1))
                M[i, j] = complex(math.comb(i, j) * s)
    return M


def test_spec_validation():
    with pytest.raises(ValueError):
        FracPowerSpec(0, 4)
    with pytest.raises(ValueError):
        FracPowerSpec(-1 + 1j, 4)
    with pytest.raises(ValueError):
        FracPowerSpec(0.5, 4, lam=0.5)
    with pytest.raises(ValueError):
        FracPowerSpec(0.5, 4, method="magic")
    with pytest.raises(ValueError):
        frac_cesaro_matrix(0, 4)
    s = FracPowerSpec(0.5, 4, lam=2)
    assert s.beta == 0.5 + 0j and s.lam == 2 + 0j


@pytest.mark.parametrize("method", ["auto", "direct-sum", "integral", "extended-precision"])
def test_beta_one_is_cesaro(method):
    N = 20
    M = frac_cesaro_matrix(1, N, method=method)
    assert M.structure == "lower-triangular"
    assert M.max_abs_diff(cesaro_matrix(N)) <= 1e-12


def test_beta_one_brute_force_telescopes():
    B = brute(1, 20)
    exact = np.tril(np.repeat((1 / np.arange(1, 22))[:, None], 21, axis=1))
    assert np.max(np.abs(B - exact)) <= 1e-15


def test_half_examples():
    M = frac_cesaro_matrix(0.5, 3).entries
    assert M[0, 0] == pytest.approx(1, abs=1e-15)
    assert M[1, 0] == pytest.approx(1 - 2 ** -0.5, abs=1e-15)
    assert abs(M[1, 0] - 0.2928932) < 1e-7


def test_corner_entry_is_lambda_power():
    for lam, beta in [(1.7, 0.3), (2 + 1j, 1.5 - 0.5j), (0.6, 2)]:
        M = resolvent_power_matrix(beta, 5, lam)
        assert M.entries[0, 0] == pytest.approx(complex(lam) ** (-complex(beta)), rel=1e-14)


def test_lambda_two_beta_one_closed_form():
    N = 10
    M = resolvent_power_matrix(1, N, 2).entries
    B = brute(1, N, lam=2)
    for i in range(N + 1):
        for j in range(i + 1):
            # C(i,j) B(j+2, i-j+1) = (j+1)/((i+1)(i+2))
            exact = float(Fraction(j + 1, (i + 1) * (i + 2)))
            assert M[i, j] == pytest.approx(exact, rel=1e-13)
            assert B[i, j] == pytest.approx(exact, rel=1e-14)


@pytest.mark.parametrize("beta", [0.5, 1 / 3, 1.5, 0.5 + 1j])
def test_all_methods_match_brute_force(beta):
    N = 40
    E = brute(beta, N)
    tol = 1e-10 * max(1, np.max(np.abs(E)))
    assert np.max(np.abs(integral_entries(beta, N)[0] - E)) <= tol
    assert np.max(np.abs(extended_precision_entries(beta, N) - E)) <= 1e-14
    assert frac_cesaro_matrix(beta, N).max_abs_diff(frac_cesaro_matrix(beta, N, "extended-precision")) <= tol


def test_direct_sum_bounds_are_honest():
    N = 64
    for beta in (0.25, 0.5, 2.0, 0.5 + 1j):
        values, bounds = alternating_sum_entries(beta, N)
        E = brute(beta, N, dps=80)
        i, j = np.tril_indices(N + 1)
        assert np.all(np.abs(values - E)[i, j] <= bounds[i, j])


def test_direct_sum_agrees_with_integral_to_offset_24():
    for beta in (1 / 3, 0.5, 1.0, 1.5, 0.25 + 0.5j):
        diff, _ = method_agreement(beta, 64, 24)
        assert diff <= 1e-8


def test_direct_sum_failure_is_detected():
    with pytest.raises(CancellationError) as exc:
        frac_cesaro_matrix(0.5, 64, method="direct-sum")
    assert exc.value.bound > 1e-10
    # beyond offset 24 the bound flags entries that really are wrong
    values, bounds = alternating_sum_entries(0.5, 64)
    E = brute(0.5, 64, dps=80)
    err = np.abs(values - E)
    wrong = np.tril(err > 1e-8)
    assert wrong.any()
    assert np.all(bounds[wrong] > 1e-8)


def test_direct_sum_small_orders_pass():
    M = frac_cesaro_matrix(0.5, 12, method="direct-sum")
    assert np.max(np.abs(M.entries - brute(0.5, 12))) <= 1e-13


def test_integral_tolerance_failure():
    with pytest.raises(QuadratureError):
        integral_entries(0.5, 20, rule=tanh_sinh(9, 1.0, 1.0), tolerance=1e-12)


def test_integral_rule_reaches_small_t():
    r = integral_rule(0.05)
    assert r.nodes[0] ** 0.05 < 1e-15


def test_square_root():
    B = square_root_matrix(1, 64)
    assert matmul(B, B).max_abs_diff(cesaro_matrix(64)) <= 1e-9
    assert B.max_abs_diff(frac_cesaro_matrix(0.5, 64)) <= 1e-10
    assert np.array_equal(matmul(-B, -B).entries, matmul(B, B).entries)
    B2 = square_root_matrix(2 + 1j, 32)
    assert matmul(B2, B2).max_abs_diff(resolvent_power_matrix(1, 32, 2 + 1j)) <= 1e-9
    with pytest.raises(ValueError):
        square_root_matrix(0.5, 4)


@pytest.mark.parametrize("b1,b2,tol", [(0.5, 0.5, 1e-9), (1 / 3, 2 / 3, 1e-8), (1, 1, 1e-12)])
def test_semigroup_property(b1, b2, tol):
    assert semigroup_property_residual(b1, b2, 64) <= tol


def test_semigroup_property_grid():
    grid = np.linspace(0.4, 2.0, 5)
    worst = max(semigroup_property_residual(a, b, 32) for a in grid for b in grid)
    assert worst <= 1e-8


@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0, 2.0])
def test_entries_positive_for_real_beta(beta):
    M = frac_cesaro_matrix(beta, 64, method="integral").entries
    i, j = np.tril_indices(65)
    band = (i - j) <= 40
    assert np.all(M.real[i[band], j[band]] > 0)
    assert np.max(np.abs(M.imag)) == 0


def test_continuity_in_beta():
    eps = 1e-6
    a = frac_cesaro_matrix(0.7, 32).entries
    b = frac_cesaro_matrix(0.7 + eps, 32).entries
    c = frac_cesaro_matrix(0.7 + 2 * eps, 32).entries
    d1 = np.max(np.abs(b - a))
    assert d1 <= 1e-4
    # first-order behaviour: doubling the step doubles the change
    assert np.max(np.abs(c - a)) == pytest.approx(2 * d1, rel=1e-2)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(-2, 2), st.floats(0.6, 4.0))
def test_corner_property(beta_re, beta_im, lam):
    beta = complex(beta_re, beta_im)
    M = resolvent_power_matrix(beta, 3, lam, method="integral")
    assert M.entries[0, 0] == pytest.approx(lam ** (-beta), rel=1e-9)


def test_phillips_densities():
    N = 24
    rule = tanh_sinh()
    P = phillips_apply(lambda t: np.exp(-t), N, rule, tolerance=1e-10)
    assert P.structure == "upper-triangular"
    assert P.max_abs_diff(cesaro_adjoint_matrix(N)) <= 1e-12
    P2 = phillips_apply(lambda t: np.exp(-2 * t), N)
    assert np.max(np.abs(P2.entries.T - resolvent_power_matrix(1, N, 2).entries)) <= 1e-12
    P3 = phillips_apply(lambda t: t**-0.5 * np.exp(-t) / math.sqrt(math.pi), N)
    assert np.max(np.abs(P3.entries.T - square_root_matrix(1, N).entries)) <= 1e-10
    beta = 0.3 + 0.2j
    P4 = phillips_apply(lambda t: t ** (beta - 1) * np.exp(-t) / complex(mpmath.gamma(beta)), N)
    assert np.max(np.abs(P4.entries.T - frac_cesaro_matrix(beta, N).entries)) <= 1e-10

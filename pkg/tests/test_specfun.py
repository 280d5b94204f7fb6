import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import roots_jacobi

from csphere.specfun import (
    GegenbauerIndex,
    JacobiParams,
    ParameterDomainError,
    cesaro_binomial,
    gegenbauer_at_one,
    gegenbauer_eval,
    gegenbauer_norm,
    gegenbauer_ratio_series,
    jacobi_at_one,
    jacobi_eval,
)


def test_jacobi_degree_zero_is_one():
    assert jacobi_eval(0, JacobiParams(0.7, -0.3), 0.123) == 1.0


def test_jacobi_at_one_matches_hypergeometric_series():
    # oracle: the explicit series P_j(x) = sum_k binom(j+a,j-k) binom(j+b,k)
    # ((x-1)/2)^k ((x+1)/2)^{j-k} collapses at x = 1 to binom(j+a, j)
    import mpmath as mp

    mp.mp.dps = 50
    expected = float(mp.binomial(mp.mpf("5.5"), 5))
    got = jacobi_eval(5, JacobiParams(0.5, 1.5), 1.0)
    assert got == pytest.approx(expected, rel=1e-13)
    assert jacobi_at_one(5, JacobiParams(0.5, 1.5)) == pytest.approx(expected, rel=1e-13)


def test_jacobi_legendre_case():
    # degree-1 Legendre polynomial is the identity map
    assert jacobi_eval(1, JacobiParams(0.0, 0.0), 0.3) == pytest.approx(0.3, abs=1e-15)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_jacobi_small_degrees_match_rodrigues(j):
    # oracle: Rodrigues formula by symbolic differentiation
    import sympy as sp

    x = sp.Symbol("x")
    a, b = sp.Rational(1, 2), sp.Rational(3, 2)
    rodrigues = (
        (-1) ** j
        / (2**j * sp.factorial(j))
        * (1 - x) ** (-a)
        * (1 + x) ** (-b)
        * sp.diff((1 - x) ** a * (1 + x) ** b * (1 - x**2) ** j, x, j)
    )
    poly = sp.simplify(rodrigues)
    for xv in (-0.8, -0.1, 0.4, 0.95):
        expected = float(poly.subs(x, sp.Rational(xv).limit_denominator(10**6)))
        assert jacobi_eval(j, JacobiParams(0.5, 1.5), xv) == pytest.approx(
            expected, rel=1e-12, abs=1e-12
        )


def test_jacobi_invalid_params():
    with pytest.raises(ParameterDomainError):
        JacobiParams(-1.0, 0.0)
    with pytest.raises(ParameterDomainError):
        JacobiParams(0.0, -1.5)


def test_jacobi_clamps_slightly_outside():
    assert jacobi_eval(3, JacobiParams(1.0, 2.0), 1 + 5e-13) == pytest.approx(
        jacobi_eval(3, JacobiParams(1.0, 2.0), 1.0)
    )
    with pytest.raises(ValueError):
        jacobi_eval(3, JacobiParams(1.0, 2.0), 1.001)


@settings(max_examples=30, deadline=None)
@given(
    alpha=st.floats(-0.9, 5),
    beta=st.floats(-0.9, 5),
    j=st.integers(2, 60),
    seed=st.integers(0, 2**31),
)
def test_jacobi_three_term_recurrence(alpha, beta, j, seed):
    params = JacobiParams(alpha, beta)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, 100)
    a, b = alpha, beta
    pj = jacobi_eval(j, params, x)
    pjm1 = jacobi_eval(j - 1, params, x)
    pjm2 = jacobi_eval(j - 2, params, x)
    c1 = 2 * j * (j + a + b) * (2 * j + a + b - 2)
    c2 = (2 * j + a + b - 1) * (a * a - b * b)
    c3 = (2 * j + a + b - 1) * (2 * j + a + b) * (2 * j + a + b - 2)
    c4 = 2 * (j + a - 1) * (j + b - 1) * (2 * j + a + b)
    residual = c1 * pj - (c2 + c3 * x) * pjm1 + c4 * pjm2
    scale = np.maximum(np.abs(c1 * pj), 1.0)
    assert np.max(np.abs(residual) / scale) < 1e-10


@settings(max_examples=20, deadline=None)
@given(
    alpha=st.floats(-0.9, 5),
    beta=st.floats(-0.9, 5),
    j=st.integers(0, 15),
    k=st.integers(0, 15),
)
def test_jacobi_orthogonality(alpha, beta, j, k):
    if j == k:
        return
    params = JacobiParams(alpha, beta)
    # Gauss-Jacobi nodes make the weighted integral exact for polynomials
    x, w = roots_jacobi(40, alpha, beta)
    cross = np.sum(w * jacobi_eval(j, params, x) * jacobi_eval(k, params, x))
    diag = np.sum(w * jacobi_eval(j, params, x) ** 2)
    assert abs(cross) <= 1e-10 * max(diag, 1e-30)


def test_gegenbauer_degree_zero():
    assert gegenbauer_eval(GegenbauerIndex(2.3, 0), -0.4) == 1.0


def test_gegenbauer_value_at_one():
    assert gegenbauer_eval(GegenbauerIndex(1.0, 3), 1.0) == pytest.approx(4.0, rel=1e-13)


def test_gegenbauer_degree_one():
    # C_1^{(1)}(x) = 2x in this normalization
    assert gegenbauer_eval(GegenbauerIndex(1.0, 1), 0.25) == pytest.approx(0.5, rel=1e-13)


def test_gegenbauer_invalid_sigma():
    with pytest.raises(ParameterDomainError):
        GegenbauerIndex(0.0, 2)


@settings(max_examples=30, deadline=None)
@given(sigma=st.floats(0.5, 6), l=st.integers(0, 40))
def test_gegenbauer_at_one_is_cesaro_binomial(sigma, l):
    val = gegenbauer_eval(GegenbauerIndex(sigma, l), 1.0)
    assert val == pytest.approx(cesaro_binomial(l, 2 * sigma - 1), rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(sigma=st.floats(0.6, 4), l=st.integers(1, 25), seed=st.integers(0, 2**31))
def test_gegenbauer_ratio_series_matches_direct(sigma, l, seed):
    rng = np.random.default_rng(seed)
    t = rng.uniform(-1, 1, 20)
    coeffs = np.zeros(l + 1)
    coeffs[l] = 1.0
    series = gegenbauer_ratio_series(coeffs, sigma, t)
    direct = gegenbauer_eval(GegenbauerIndex(sigma, l), t) / gegenbauer_at_one(sigma, l)
    assert np.max(np.abs(series - direct)) < 1e-10


@pytest.mark.parametrize(
    "sigma,l,expected",
    [(1.0, 0, np.pi / 2), (1.0, 1, np.pi / 2), (2.0, 0, 3 * np.pi / 8)],
)
def test_gegenbauer_norm_closed_cases(sigma, l, expected):
    # oracle: numeric integral of (1-t^2)^{sigma-1/2} P_l(t)^2
    integral, _ = quad(
        lambda t: (1 - t * t) ** (sigma - 0.5)
        * gegenbauer_eval(GegenbauerIndex(sigma, l), t) ** 2,
        -1,
        1,
    )
    assert integral == pytest.approx(expected, rel=1e-10)
    assert gegenbauer_norm(sigma, l) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("sigma", [1.0, 2.0, 3.5])
@pytest.mark.parametrize("l", [0, 1, 2, 5, 10, 20])
def test_gegenbauer_norm_matches_quadrature(sigma, l):
    integral, _ = quad(
        lambda t: (1 - t * t) ** (sigma - 0.5)
        * gegenbauer_eval(GegenbauerIndex(sigma, l), t) ** 2,
        -1,
        1,
        limit=200,
    )
    assert gegenbauer_norm(sigma, l) == pytest.approx(integral, rel=1e-8)


def test_cesaro_binomial_cases():
    assert cesaro_binomial(0, 3.7) == pytest.approx(1.0)
    assert cesaro_binomial(4, 0.0) == pytest.approx(1.0)
    assert cesaro_binomial(3, 2.0) == pytest.approx(10.0, rel=1e-13)
    with pytest.raises(ParameterDomainError):
        cesaro_binomial(3, -0.5)

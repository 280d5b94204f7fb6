"""Jacobi and Gegenbauer polynomials in the normalizations used by the kernels.

Everything here is evaluated by forward three-term recurrence in double
precision; ratios of gamma functions go through log-space so that large
degrees and parameters do not overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


class ParameterDomainError(ValueError):
    """Raised when a polynomial parameter is outside its weight-integrable range."""


_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    """Exponent pair (alpha, beta) of the Jacobi weight (1-x)^alpha (1+x)^beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ParameterDomainError(
                f"Jacobi exponents must exceed -1, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True)
class GegenbauerIndex:
    """Gegenbauer parameter sigma > 0 and a polynomial degree."""

    sigma: float
    degree: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterDomainError(f"Gegenbauer sigma must be positive, got {self.sigma}")
        if self.degree < 0:
            raise ParameterDomainError(f"degree must be nonnegative, got {self.degree}")


def _clamp_unit(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + _CLAMP_TOL):
        raise ValueError("argument outside [-1, 1] beyond clamping tolerance")
    return np.clip(x, -1.0, 1.0)


def log_binomial(a: float, k: int) -> float:
    """log of the generalized binomial coefficient binom(a, k), a + 1 - k > 0."""
    return gammaln(a + 1) - gammaln(a + 1 - k) - gammaln(k + 1)


def jacobi_at_one(j: int, params: JacobiParams) -> float:
    """P_j^{(alpha,beta)}(1) = binom(j + alpha, j)."""
    return float(np.exp(log_binomial(j + params.alpha, j)))


def jacobi_eval(j: int, params: JacobiParams, x):
    """Evaluate P_j^{(alpha,beta)}(x), normalized so P_j(1) = binom(j+alpha, j).

    Accepts scalar or array x in [-1, 1] (clamped within 1e-12 outside).
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    a, b = params.alpha, params.beta
    x = _clamp_unit(x)
    p_prev = np.ones_like(x)
    if j == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p_cur = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(2, j + 1):
        c1 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
        c2 = (2 * k + a + b - 1) * (a * a - b * b)
        c3 = (2 * k + a + b - 1) * (2 * k + a + b) * (2 * k + a + b - 2)
        c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
        p_prev, p_cur = p_cur, ((c2 + c3 * x) * p_cur - c4 * p_prev) / c1
    return p_cur if p_cur.ndim else float(p_cur)


def gegenbauer_at_one(sigma: float, l: int) -> float:
    """P_l^{(sigma)}(1) = binom(l + 2*sigma - 1, l)."""
    return float(np.exp(log_binomial(l + 2 * sigma - 1, l)))


def gegenbauer_eval(idx: GegenbauerIndex, x):
    """Evaluate the Gegenbauer polynomial with P_l^{(sigma)}(1) = binom(l+2sigma-1, l).

    Computed through the Jacobi polynomial with alpha = beta = sigma - 1/2,
    rescaled to match the value at 1.
    """
    sigma, l = idx.sigma, idx.degree
    params = JacobiParams(sigma - 0.5, sigma - 0.5)
    scale = gegenbauer_at_one(sigma, l) / jacobi_at_one(l, params)
    return scale * jacobi_eval(l, params, x)


def gegenbauer_ratio_series(coeffs, sigma: float, t):
    """Sum_l coeffs[l] * P_l^{(sigma)}(t) / P_l^{(sigma)}(1), vectorized in t.

    Uses the recurrence for the ratio R_l = P_l(t)/P_l(1) directly:
    R_l = 2(l+sigma-1)/(l+2sigma-1) t R_{l-1} - (l-1)/(l+2sigma-1) R_{l-2},
    which keeps every intermediate bounded by 1 in magnitude on [-1, 1].
    """
    coeffs = np.asarray(coeffs, dtype=float)
    t = _clamp_unit(t)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    acc = coeffs[0] * np.ones_like(t)
    if len(coeffs) > 1:
        r_prev = np.ones_like(t)
        r_cur = t.copy()
        scratch = np.empty_like(t)
        if coeffs[1]:
            acc += coeffs[1] * r_cur
        for l in range(2, len(coeffs)):
            a = 2 * (l + sigma - 1) / (l + 2 * sigma - 1)
            b = (l - 1) / (l + 2 * sigma - 1)
            # in-place update: r_prev becomes the new top value
            np.multiply(t, r_cur, out=scratch)
            scratch *= a
            r_prev *= -b
            r_prev += scratch
            r_prev, r_cur = r_cur, r_prev
            if coeffs[l]:
                np.multiply(r_cur, coeffs[l], out=scratch)
                acc += scratch
    return float(acc[0]) if scalar else acc


def gegenbauer_norm(sigma: float, l: int) -> float:
    """Weighted L2 mass of P_l^{(sigma)} against (1 - t^2)^{sigma - 1/2} on [-1, 1].

    gamma_l = 2^{1-2 sigma} pi / Gamma(sigma)^2 * Gamma(l + 2 sigma) / ((l + sigma) l!)
    """
    if not sigma > 0:
        raise ParameterDomainError(f"sigma must be positive, got {sigma}")
    log_val = (
        (1 - 2 * sigma) * np.log(2.0)
        + np.log(np.pi)
        - 2 * gammaln(sigma)
        + gammaln(l + 2 * sigma)
        - np.log(l + sigma)
        - gammaln(l + 1)
    )
    return float(np.exp(log_val))


def cesaro_binomial(k: int, delta: float) -> float:
    """C_k^delta = binom(k + delta, k), computed in log-space."""
    if delta < 0:
        raise ParameterDomainError(f"delta must be nonnegative, got {delta}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return float(np.exp(gammaln(k + delta + 1) - gammaln(delta + 1) - gammaln(k + 1)))

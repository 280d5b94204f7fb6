"""Zonal kernels on the complex sphere.

A zonal kernel is stored as a coefficient vector against the degree kernels
h_l, so convolution and multiplier application become coefficient-wise
operations; pointwise evaluation is a normalized Gegenbauer summation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import betainc, gammaln

from .specfun import (
    JacobiParams,
    gegenbauer_ratio_series,
    jacobi_at_one,
    jacobi_eval,
)
from .structure import _check_q, dim_degree, dim_harm, dim_poly


class SingularMultiplierError(ValueError):
    """Raised when a negative-order multiplier is requested at degree 0."""


class MultiplierContractError(ValueError):
    """Raised when a multiplier sequence violates the cutoff-support contract."""


@dataclass(frozen=True)
class Angles:
    """Angle pair (theta, phi) encoding a complex inner product cos(theta) e^{i phi}."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0 <= self.theta <= np.pi / 2 + 1e-12):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")

    @property
    def real_inner(self) -> float:
        """Inner product cos(theta) cos(phi) on the associated real sphere."""
        return float(np.cos(self.theta) * np.cos(self.phi))


@dataclass(frozen=True)
class ZonalKernel:
    """Coefficients c_0..c_m against the degree kernels h_l on S^{2q}."""

    q: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_q(self.q)
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, t):
        """Pointwise value at real inner product t = cos(theta) cos(phi)."""
        dl = np.array([dim_degree(l, self.q) for l in range(len(self.coeffs))], dtype=float)
        return gegenbauer_ratio_series(self.coeffs * dl, self.q - 1, t)

    def pole_value(self) -> float:
        """Value at t = 1, equal to sum_l c_l d_l."""
        dl = np.array([dim_degree(l, self.q) for l in range(len(self.coeffs))], dtype=float)
        return float(np.dot(self.coeffs, dl))


@dataclass(frozen=True)
class MultiplierSequence:
    """Finite real sequence rho_0..rho_top indexed by degree.

    degree_cut is the last index where the sequence still equals the raw
    multiplier; entries beyond the stored range read as zero.
    """

    values: np.ndarray
    degree_cut: int
    top: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.values) != self.top + 1:
            raise ValueError("values must have length top + 1")

    def value(self, k: int) -> float:
        if k < 0:
            raise ValueError("index must be nonnegative")
        return float(self.values[k]) if k <= self.top else 0.0


def kernel_harm(m: int, n: int, q: int, a: Angles) -> complex:
    """Reproducing kernel of the bidegree-(m, n) harmonic space at the angle pair."""
    _check_q(q)
    mn = min(m, n)
    params = JacobiParams(q - 2, abs(m - n))
    ratio = jacobi_eval(mn, params, np.cos(2 * a.theta)) / jacobi_at_one(mn, params)
    return (
        dim_harm(m, n, q)
        * np.exp(1j * (m - n) * a.phi)
        * np.cos(a.theta) ** abs(m - n)
        * ratio
    )


def kernel_degree(l: int, q: int, t):
    """Degree-l kernel h_l(t) = d_l P_l^{(q-1)}(t) / P_l^{(q-1)}(1)."""
    _check_q(q)
    coeffs = np.zeros(l + 1)
    coeffs[l] = dim_degree(l, q)
    return gegenbauer_ratio_series(coeffs, q - 1, t)


def verify_bivariate(l: int, q: int, a: Angles) -> float:
    """Residual of the bidegree sum against the degree kernel at one angle pair.

    Includes the imaginary part of the sum (which must vanish) and is scaled
    by max(1, d_l).
    """
    total = sum(kernel_harm(m, l - m, q, a) for m in range(l + 1))
    target = kernel_degree(l, q, a.real_inner)
    return abs(total - target) / max(1, dim_degree(l, q))


# Jacobi parameters of the full-space kernel closed form; the degree-sum
# identity pins them to ((2q-1)/2, (2q-3)/2).
def full_kernel_params(q: int) -> JacobiParams:
    return JacobiParams(q - 0.5, q - 1.5)


def kernel_full(n: int, q: int, t):
    """Reproducing kernel of the full degree-n polynomial space, closed form."""
    _check_q(q)
    params = full_kernel_params(q)
    return dim_poly(n, q) * jacobi_eval(n, params, t) / jacobi_at_one(n, params)


def cesaro_kernel(n: int, delta: float, q: int) -> ZonalKernel:
    """Cesaro mean of h_0..h_n with weights C_{n-l}^delta / C_n^delta."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    k = np.arange(n + 1)
    log_c = gammaln(n - k + delta + 1) - gammaln(delta + 1) - gammaln(n - k + 1)
    log_cn = gammaln(n + delta + 1) - gammaln(delta + 1) - gammaln(n + 1)
    return ZonalKernel(q, np.exp(log_c - log_cn))


def bernstein_multiplier(l: int, q: int, gamma: float) -> float:
    """(l (l + 2q - 1))^{gamma/2}; the gamma = 0 multiplier is the identity."""
    _check_q(q)
    if l < 0:
        raise ValueError("degree must be nonnegative")
    if gamma == 0:
        return 1.0
    if l == 0:
        if gamma < 0:
            raise SingularMultiplierError("negative-order multiplier is singular at degree 0")
        return 0.0
    return float((l * (l + 2 * q - 1)) ** (gamma / 2))


def cutoff_g(x, n: int, q: int):
    """Smooth cutoff: 1 on [0, n], 0 on [2n, inf), regularized incomplete beta between.

    On [n, 2n] the value is 1 - I_s(q+2, q+2) with s = (x - n)/n, the closed
    form of the normalized integral of ((y-n)(2n-y))^{q+1}.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_q(q)
    x = np.asarray(x, dtype=float)
    s = np.clip((x - n) / n, 0.0, 1.0)
    out = 1.0 - betainc(q + 2, q + 2, s)
    return out if out.ndim else float(out)


def cutoff_normalization(n: int, q: int) -> float:
    """Normalizing constant of the cutoff integral: (2q+3)! / (n^{2q+3} ((q+1)!)^2)."""
    return float(
        np.exp(
            gammaln(2 * q + 4)
            - (2 * q + 3) * np.log(float(n))
            - 2 * gammaln(q + 2)
        )
    )


def build_rho(n: int, m: int, q: int, gamma: float) -> MultiplierSequence:
    """Multiplier sequence rho_k = g(k) h(k): raw multiplier below n, cutoff to 0 at 2n.

    Requires m >= 2n + q + 1 so the high-end boundary differences vanish.
    """
    if m < 2 * n + q + 1:
        raise MultiplierContractError(
            f"need m >= 2n + q + 1 = {2 * n + q + 1}, got m = {m}"
        )
    k = np.arange(m + 1)
    h = np.array([bernstein_multiplier(int(ki), q, gamma) for ki in k])
    return MultiplierSequence(values=cutoff_g(k, n, q) * h, degree_cut=n, top=m)


def finite_difference(seq: MultiplierSequence, j: int, k: int) -> float:
    """j-th forward difference with Delta rho_k = rho_k - rho_{k+1}.

    Out-of-range terms read as zero, consistent with rho vanishing beyond
    the cutoff support.
    """
    if j < 0 or k < 0:
        raise ValueError("difference order and index must be nonnegative")
    return float(
        sum((-1) ** i * comb(j, i) * seq.value(k + i) for i in range(j + 1))
    )


def kernel_direct(seq: MultiplierSequence, q: int) -> ZonalKernel:
    """The kernel sum_l rho_l h_l, assembled directly."""
    return ZonalKernel(q, seq.values.copy())


def kernel_km_abel(seq: MultiplierSequence, q: int) -> ZonalKernel:
    """Assemble sum_l rho_l h_l through q+1-fold Abel summation.

    K = sum_{l} Delta^{q+1} rho_l C_l^q S_l^q, an exact rearrangement of the
    direct sum once the boundary differences Delta^j rho_{top-j} vanish for
    j <= q; that is guaranteed by the build_rho support contract and checked.
    """
    m = seq.top
    boundary = max(abs(finite_difference(seq, j, m - j)) for j in range(q + 1))
    if boundary > 1e-9 * max(1.0, float(np.max(np.abs(seq.values)))):
        raise MultiplierContractError(
            f"nonzero boundary differences ({boundary:.3e}); sequence does not vanish at the top"
        )
    diffs = np.array([finite_difference(seq, q + 1, l) for l in range(m + 1)])
    coeffs = np.zeros(m + 1)
    for j in range(m + 1):
        i = np.arange(m + 1 - j)
        cvals = np.exp(gammaln(i + q + 1) - gammaln(q + 1) - gammaln(i + 1))
        coeffs[j] = np.dot(diffs[j:], cvals)
    return ZonalKernel(q, coeffs)

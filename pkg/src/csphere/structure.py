"""Exact-integer dimension formulas for the harmonic and polynomial spaces.

All three dimensions are computed in arbitrary-size integer arithmetic;
factorial ratios overflow 64-bit floats already around q = 6, l = 30.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial


class SphereParameterError(ValueError):
    """Raised for q < 2, where the sphere constructions degenerate."""


def _check_q(q: int):
    if q < 2:
        raise SphereParameterError(f"q must be at least 2, got {q}")


@dataclass(frozen=True)
class HarmIndex:
    m: int
    n: int
    q: int

    def __post_init__(self):
        _check_q(self.q)
        if self.m < 0 or self.n < 0:
            raise ValueError("bidegree must be nonnegative")


def dim_harm(m: int, n: int, q: int) -> int:
    """Dimension of the bidegree-(m, n) harmonic space.

    (m+n+q-1) (m+q-2)! (n+q-2)! / (m! n! (q-1)! (q-2)!), always an integer.
    """
    _check_q(q)
    if m < 0 or n < 0:
        raise ValueError("bidegree must be nonnegative")
    num = (m + n + q - 1) * factorial(m + q - 2) * factorial(n + q - 2)
    den = factorial(m) * factorial(n) * factorial(q - 1) * factorial(q - 2)
    quotient, rem = divmod(num, den)
    assert rem == 0
    return quotient


def dim_degree(l: int, q: int) -> int:
    """Dimension of the degree-l harmonic space, equal to the spherical-harmonic
    count on the real sphere of dimension 2q-1.

    Equals binom(l+2q-1, l) - binom(l+2q-3, l-2), and for l > 0 also
    2 (l+q-1) (l+2q-3)! / ((2q-2)! l!).
    """
    _check_q(q)
    if l < 0:
        raise ValueError("degree must be nonnegative")
    return comb(l + 2 * q - 1, l) - (comb(l + 2 * q - 3, l - 2) if l >= 2 else 0)


def dim_poly(n: int, q: int) -> int:
    """Dimension t_n of the full polynomial space of degree n."""
    _check_q(q)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    num = (2 * n + 2 * q - 1) * factorial(n + 2 * q - 2)
    den = factorial(2 * q - 1) * factorial(n)
    quotient, rem = divmod(num, den)
    assert rem == 0
    return quotient

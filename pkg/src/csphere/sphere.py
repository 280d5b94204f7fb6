"""Geometry of the complex sphere: points, sampling, quadrature, convolution.

The invariant probability measure on S^{2q} coincides with the uniform
measure on the real sphere S^{2q-1} in R^{2q}; zonal integrands reduce to a
2-D (theta, phi) rectangle with weight cos(theta) sin(theta)^{2q-3}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .kernels import Angles, MultiplierSequence, ZonalKernel, kernel_degree
from .structure import _check_q


class KernelMismatchError(ValueError):
    """Raised when kernels on different spheres are combined."""


def random_point(q: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on S^{2q}: normalized standard complex Gaussian in C^q."""
    _check_q(q)
    z = rng.standard_normal(q) + 1j * rng.standard_normal(q)
    return z / np.linalg.norm(z)


def random_unitary(q: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed q x q unitary via QR with the standard phase correction."""
    _check_q(q)
    z = (rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q))) / np.sqrt(2)
    u, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return u * (d / np.abs(d))


def inner_product(w: np.ndarray, z: np.ndarray) -> complex:
    """Hermitian inner product <w, z> = sum_j w_j conj(z_j)."""
    return complex(np.sum(w * np.conj(z)))


def angles_from_pair(w: np.ndarray, z: np.ndarray) -> Angles:
    """Standard-form angles: theta = arccos|<w,z>|, phi = arg<w,z> in [0, 2pi)."""
    ip = inner_product(w, z)
    mod = min(abs(ip), 1.0)
    theta = float(np.arccos(mod))
    phi = 0.0 if mod <= 1e-14 else float(np.angle(ip)) % (2 * np.pi)
    return Angles(theta=theta, phi=phi)


def geodesic_distance(w: np.ndarray, z: np.ndarray) -> float:
    """Distance arccos(Re<w,z>) on the associated real sphere."""
    return float(np.arccos(np.clip(np.real(inner_product(w, z)), -1.0, 1.0)))


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor rule on the (theta, phi) rectangle for the normalized zonal measure.

    theta_weights already include the surface factor cos(theta) sin(theta)^{2q-3};
    normalization makes the rule integrate the constant 1 to 1.
    """

    q: int
    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weights: np.ndarray
    normalization: float

    def t_grid(self) -> np.ndarray:
        """Real inner products cos(theta) cos(phi) on the tensor grid."""
        return np.cos(self.theta_nodes)[:, None] * np.cos(self.phi_nodes)[None, :]

    def integrate_grid(self, values: np.ndarray) -> float:
        """Integrate values sampled on the (theta, phi) tensor grid."""
        return self.normalization * float(
            np.einsum("i,j,ij->", self.theta_weights, self.phi_weights, values)
        )

    def folded_phi(self) -> tuple[np.ndarray, np.ndarray]:
        """cos(phi) values with duplicates merged and their combined weights.

        Equispaced phi nodes come in pairs phi_j, 2*pi - phi_j with equal
        cosine; folding them halves the work for integrands of t alone.
        """
        n = len(self.phi_nodes)
        half = n // 2
        cos_vals = np.cos(self.phi_nodes[: half + 1])
        weights = self.phi_weights[: half + 1].copy()
        weights[1 : (n + 1) // 2] *= 2
        return cos_vals, weights

    def integrate_zonal(self, f) -> float:
        """Integrate a function of the real inner product t."""
        cos_phi, w_phi = self.folded_phi()
        t = np.cos(self.theta_nodes)[:, None] * cos_phi[None, :]
        return self.normalization * float(
            np.einsum("i,j,ij->", self.theta_weights, w_phi,
                      np.asarray(f(t), dtype=float))
        )


def zonal_quadrature(q: int, n_theta: int, n_phi: int) -> QuadratureRule:
    """Gauss-Legendre in theta on [0, pi/2], equispaced in phi on [0, 2pi)."""
    _check_q(q)
    if n_theta < 8 or n_phi < 8:
        raise ValueError("need at least 8 nodes per direction")
    x, w = roots_legendre(n_theta)
    theta = (x + 1) * np.pi / 4
    w_theta = w * np.pi / 4 * np.cos(theta) * np.sin(theta) ** (2 * q - 3)
    phi = np.arange(n_phi) * 2 * np.pi / n_phi
    w_phi = np.full(n_phi, 2 * np.pi / n_phi)
    return QuadratureRule(
        q=q,
        theta_nodes=theta,
        theta_weights=w_theta,
        phi_nodes=phi,
        phi_weights=w_phi,
        normalization=(q - 1) / np.pi,
    )


def zonal_lr_norm(kernel, r: float, rule: QuadratureRule) -> float:
    """L^r norm of a zonal function; pass a ZonalKernel or a callable of t."""
    f = kernel.eval if isinstance(kernel, ZonalKernel) else kernel
    if r < 1:
        raise ValueError("r must be at least 1")
    cos_phi, w_phi = rule.folded_phi()
    cos_theta = np.cos(rule.theta_nodes)
    # process theta in blocks so the working set stays bounded for large rules
    block = max(1, (1 << 23) // max(1, len(cos_phi)))
    total = 0.0
    running_max = 0.0
    for start in range(0, len(cos_theta), block):
        stop = start + block
        t = cos_theta[start:stop, None] * cos_phi[None, :]
        vals = np.abs(np.asarray(f(t), dtype=float))
        if np.isinf(r):
            running_max = max(running_max, float(np.max(vals)))
            continue
        if r != 1:
            vals **= r
        total += float(
            np.einsum("i,j,ij->", rule.theta_weights[start:stop], w_phi, vals)
        )
    if np.isinf(r):
        return running_max
    return (rule.normalization * total) ** (1 / r)


def convolve_zonal(f: ZonalKernel, g: ZonalKernel) -> ZonalKernel:
    """Convolution of zonal kernels: coefficient-wise product against {h_l}."""
    if f.q != g.q:
        raise KernelMismatchError(f"sphere parameters differ: {f.q} vs {g.q}")
    m = min(len(f.coeffs), len(g.coeffs))
    return ZonalKernel(f.q, f.coeffs[:m] * g.coeffs[:m])


def convolve_by_quadrature(f, g, s, q: int, n_nodes: int = 80):
    """Direct quadrature of the convolution integral of two zonal functions.

    For zonal f, g on the real sphere S^{2q-1}, (f*g)(s) reduces to a double
    integral over t = <y,e> and the transverse component u, with Jacobi
    weights (1-t^2)^{q-3/2} and (1-u^2)^{q-2}.  Used as an oracle against
    the coefficient-wise product.
    """
    _check_q(q)
    d = 2 * q
    t, wt = roots_jacobi(n_nodes, (d - 3) / 2, (d - 3) / 2)
    u, wu = roots_jacobi(n_nodes, (d - 4) / 2, (d - 4) / 2)
    wt = wt / wt.sum()
    wu = wu / wu.sum()
    scalar = np.asarray(s).ndim == 0
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    T = t[:, None, None]
    U = u[None, :, None]
    S = s_arr[None, None, :]
    arg = np.clip(T * S + np.sqrt((1 - T**2) * (1 - S**2)) * U, -1.0, 1.0)
    fv = np.asarray(f(np.broadcast_to(T, arg.shape).copy()), dtype=float)
    out = np.einsum("i,j,ijk->k", wt, wu, fv * np.asarray(g(arg), dtype=float))
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class TranslatedZonalSum:
    """Polynomial represented as a sum of zonal kernels translated to centers.

    p(x) = sum_c sum_l coeffs[c, l] h_l((x, y_c)); spans enough of the
    degree-n polynomial space to exercise multiplier operators without
    constructing harmonic bases.
    """

    q: int
    centers: np.ndarray  # shape (n_centers, q), complex unit vectors
    coeffs: np.ndarray  # shape (n_centers, degree + 1)

    def __post_init__(self):
        object.__setattr__(self, "centers", np.asarray(self.centers, dtype=complex))
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.centers.shape[0] != self.coeffs.shape[0]:
            raise ValueError("one coefficient row per center required")

    @property
    def degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def eval(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an array of sphere points, shape (n_points, q)."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        t = np.clip(np.real(pts @ np.conj(self.centers).T), -1.0, 1.0)
        out = np.zeros(len(pts))
        for c in range(len(self.centers)):
            out += ZonalKernel(self.q, self.coeffs[c]).eval(t[:, c])
        return out

    def degree_gram(self, l: int) -> np.ndarray:
        """Gram matrix of the translated degree-l kernels: h_l((y_c, y_c'))."""
        t = np.clip(np.real(self.centers @ np.conj(self.centers).T), -1.0, 1.0)
        return np.asarray(kernel_degree(l, self.q, t.ravel())).reshape(t.shape)

    def norm_l2(self) -> float:
        """Exact L2 norm from the per-degree Gram matrices."""
        total = 0.0
        for l in range(self.degree + 1):
            a = self.coeffs[:, l]
            if np.any(a):
                total += float(a @ self.degree_gram(l) @ a)
        return float(np.sqrt(max(total, 0.0)))

    def norm_sup(self, points: np.ndarray) -> float:
        """Empirical sup norm over a fixed evaluation point set."""
        return float(np.max(np.abs(self.eval(points))))


def apply_multiplier(seq: MultiplierSequence, p: TranslatedZonalSum) -> TranslatedZonalSum:
    """Scale each degree-l component by rho_l; exact in this representation."""
    if p.degree > seq.top:
        raise ValueError(f"polynomial degree {p.degree} exceeds sequence top {seq.top}")
    rho = seq.values[: p.degree + 1]
    return TranslatedZonalSum(q=p.q, centers=p.centers, coeffs=p.coeffs * rho[None, :])

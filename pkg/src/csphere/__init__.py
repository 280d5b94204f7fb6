"""Harmonic analysis on the complex sphere S^{2q}.

Orthogonal-polynomial zonal kernels, exact dimension formulas, Cesaro
means, smooth-cutoff multiplier kernels, and numerical experiment suites
for the identities and norm bounds they satisfy.
"""

from .kernels import (
    Angles,
    MultiplierSequence,
    ZonalKernel,
    bernstein_multiplier,
    build_rho,
    cesaro_kernel,
    cutoff_g,
    finite_difference,
    kernel_degree,
    kernel_direct,
    kernel_full,
    kernel_harm,
    kernel_km_abel,
    verify_bivariate,
)
from .specfun import (
    GegenbauerIndex,
    JacobiParams,
    cesaro_binomial,
    gegenbauer_eval,
    gegenbauer_norm,
    jacobi_eval,
)
from .sphere import (
    QuadratureRule,
    TranslatedZonalSum,
    angles_from_pair,
    apply_multiplier,
    convolve_by_quadrature,
    convolve_zonal,
    geodesic_distance,
    inner_product,
    random_point,
    random_unitary,
    zonal_lr_norm,
    zonal_quadrature,
)
from .structure import dim_degree, dim_harm, dim_poly

__version__ = "0.1.0"

"""Numerical radius computation and verification of its refined bounds."""

from .bounds import (
    CATALOG,
    CATALOG_VERSION,
    BoundReport,
    evaluate_primitive_check,
    evaluate_radius_bound,
    verify_chain,
)
from .generators import GeneratorSpec, generate, generate_unit_vector
from .linalg import ScalarFn, abs_value, apply_fn_psd, hermitian_eig, sqrt_psd
from .numrange import RadiusResult, numerical_radius, numerical_range_boundary, omega_2x2_oracle
from .sphere import (
    SphereOptions,
    inf_xi_quadratic_deviation,
    inf_xi_variance_ratio,
    kian_deficiency,
    sphere_grid_oracle,
    xi_pencil,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "CATALOG_VERSION",
    "BoundReport",
    "GeneratorSpec",
    "RadiusResult",
    "ScalarFn",
    "SphereOptions",
    "abs_value",
    "apply_fn_psd",
    "evaluate_primitive_check",
    "evaluate_radius_bound",
    "generate",
    "generate_unit_vector",
    "hermitian_eig",
    "inf_xi_quadratic_deviation",
    "inf_xi_variance_ratio",
    "kian_deficiency",
    "numerical_radius",
    "numerical_range_boundary",
    "omega_2x2_oracle",
    "sphere_grid_oracle",
    "sqrt_psd",
    "verify_chain",
    "xi_pencil",
]

"""Exact arithmetic for filtered section rings of big line bundles on toric models.

Everything is computed over the rationals: moment polytopes, graded pieces,
vanishing numbers, level and limit measures, Okounkov bodies and their
filtered refinements, and restricted volume functions.  The CLI entry point
lives in okdh.cli.
"""

from .errors import InvariantViolation, ValidationError
from .exact import decimal_str, format_rational, rational
from .models import ToricModel, from_polytope, load_model, model_from_dict, model_to_dict, projective_space
from .filtrations import WeightFiltration, filtration_from_dict, filtration_to_dict, load_filtration
from .measures import (
    DiscreteMeasure,
    PiecewisePolyMeasure,
    convergence_sweep,
    expectation,
    kolmogorov_distance,
    limit_measure_mu,
    limit_measure_nu,
    mu_m,
    nu_m,
    sweep_to_csv,
    total_mass,
)
from .okounkov import (
    concave_transform,
    concave_transform_eval,
    filtered_body,
    filtered_body_volume,
    okounkov_body,
    semigroup_oracle,
    semigroup_sample,
    slice_body,
    slice_volume_function,
)
from .polytopes import RationalPolytope, convex_hull, lattice_points, volume
from .restricted import (
    DivisorData,
    divisor_from_dict,
    finite_level_estimates,
    restricted_h0,
    restricted_volume,
    restricted_volume_function,
    verify_restricted_volume_identity,
    volume_function,
    volume_of_L_minus_tE,
)
from .catalog import builtin, builtin_names

__version__ = "0.1.0"

__all__ = [
    "DiscreteMeasure",
    "DivisorData",
    "InvariantViolation",
    "PiecewisePolyMeasure",
    "RationalPolytope",
    "ToricModel",
    "ValidationError",
    "WeightFiltration",
    "builtin",
    "builtin_names",
    "concave_transform",
    "concave_transform_eval",
    "convergence_sweep",
    "convex_hull",
    "decimal_str",
    "divisor_from_dict",
    "expectation",
    "filtered_body",
    "filtered_body_volume",
    "filtration_from_dict",
    "filtration_to_dict",
    "finite_level_estimates",
    "format_rational",
    "from_polytope",
    "kolmogorov_distance",
    "lattice_points",
    "limit_measure_mu",
    "limit_measure_nu",
    "load_filtration",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "mu_m",
    "nu_m",
    "okounkov_body",
    "projective_space",
    "rational",
    "restricted_h0",
    "restricted_volume",
    "restricted_volume_function",
    "semigroup_oracle",
    "semigroup_sample",
    "slice_body",
    "slice_volume_function",
    "sweep_to_csv",
    "total_mass",
    "verify_restricted_volume_identity",
    "volume",
    "volume_function",
    "volume_of_L_minus_tE",
    "__version__",
]

"""Heegaard genus bounds and Heegaard gradient certificates for Seifert fibered 3-manifolds."""

from .classification import (
    GeometryType,
    GradientSign,
    classify,
    geometry,
    has_finite_pi1,
    heegaard_gradient_sign,
    virtually_fibers_over_circle,
    virtually_fibers_over_surface,
)
from .covers import (
    CoverDescriptor,
    CoverValidationError,
    Explicit,
    FiberCyclic,
    Parametric,
    PropCircle,
    compose,
    fiber_cyclic_cover,
    prop_circle_family,
    pullback_circle_bundle,
)
from .gradient import (
    GradientReport,
    Verdict,
    decide_zero_gradient,
    genus_gradient_equivalence,
    gradient_sequence,
    strong_gradient_report,
    term_interval,
)
from .heegaard import chi_h_interval, chi_sh_interval, genus_bounds, vertical_genus
from .seifert_core import (
    Orbifold,
    SeifertError,
    SeifertInvariants,
    base_orbifold,
    euler_number,
    format_sfs,
    normalize,
    orbifold_euler_characteristic,
    parse_sfs,
)

__version__ = "0.1.0"

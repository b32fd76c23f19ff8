"""Exact verification toolkit for regular del Pezzo surfaces over function
fields of characteristic 2 and 3.

Everything is computed over F_p(parameters) with exact arithmetic: sparse
polynomials, Groebner bases with explicit resource limits, chart-by-chart
Jacobian criteria, and integer intersection lattices.
"""

from .catalogue import (
    OUT_OF_SCOPE,
    RECORD_ORDER,
    ExampleRecord,
    ExpectedRow,
    Summary,
    VerificationReport,
    compute_k2,
    coverage_selftest,
    load_example,
    record_ids,
    verdict_tuple,
    verify_all,
    verify_example,
)
from .groebner import (
    Inconclusive,
    Limits,
    buchberger,
    dimension,
    is_unit_ideal,
    projective_is_empty,
    radical_membership,
    saturate,
    vector_space_dimension,
)
from .lattice import (
    ClassVector,
    DivisorLattice,
    blowup_k2,
    conic_bundle_bound,
    conic_fibration,
    cover_lattice,
    hypersurface_lattice,
    index_two_check,
    k2_weighted_ci,
    negcurve_divisibility,
    product,
    rr_chi,
    ruled_k2,
    secant_selfint,
)
from .parsing import parse_model, parse_poly
from .poly import Coefficient, Polynomial
from .ring import RingContext
from .scheme import (
    AmbientSpace,
    Chart,
    SurfaceModel,
    ambient_check,
    blow_up,
    build_model,
    check_regular,
    chart_singular_data,
    double_cover,
    geometric_integrality,
    geometric_singular_dimension,
    is_geometrically_normal,
    jacobian_minors,
    nonsmooth_ideal,
    pth_root_closure,
    subschemes_disjoint,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "Chart",
    "ClassVector",
    "Coefficient",
    "DivisorLattice",
    "ExampleRecord",
    "ExpectedRow",
    "Inconclusive",
    "Limits",
    "OUT_OF_SCOPE",
    "Polynomial",
    "RECORD_ORDER",
    "RingContext",
    "Summary",
    "SurfaceModel",
    "VerificationReport",
    "ambient_check",
    "blow_up",
    "blowup_k2",
    "buchberger",
    "build_model",
    "chart_singular_data",
    "check_regular",
    "compute_k2",
    "conic_bundle_bound",
    "conic_fibration",
    "cover_lattice",
    "coverage_selftest",
    "dimension",
    "double_cover",
    "geometric_integrality",
    "geometric_singular_dimension",
    "hypersurface_lattice",
    "index_two_check",
    "is_geometrically_normal",
    "is_unit_ideal",
    "jacobian_minors",
    "k2_weighted_ci",
    "load_example",
    "negcurve_divisibility",
    "nonsmooth_ideal",
    "parse_model",
    "parse_poly",
    "product",
    "projective_is_empty",
    "pth_root_closure",
    "radical_membership",
    "record_ids",
    "rr_chi",
    "ruled_k2",
    "saturate",
    "secant_selfint",
    "subschemes_disjoint",
    "vector_space_dimension",
    "verdict_tuple",
    "verify_all",
    "verify_example",
]

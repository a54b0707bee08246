"""Numerical toolkit for polynomial hulls of Laurent-symbol graphs.

The package takes a bivariate Laurent polynomial p, forms the graph of a
height built from p over the unit torus, and provides:

- an exact Laurent-polynomial kernel with parsing and canonical
  serialization (laurent),
- the reflected-symbol determinant criterion that locates the analytic
  pieces attached to the hull of the graph (hull_criterion),
- tracing and topology of the double-cover varieties those pieces live
  on (variety),
- symplectic measurements (isotropy defect, height shear, distances)
  of the graphs (geometry),
- sampled polynomial separation and membership certificates
  (separation),
- a spectral-defect search for holomorphic discs attached to the graph
  (discs),
- a deterministic command-line pipeline tying the stages together
  (cli).
"""

from .discs import (
    BoundaryLoop,
    DefectResult,
    WindingScan,
    defect,
    gradient_check,
    minimize_defect,
    winding_scan,
)
from .geometry import (
    GraphSpec,
    IsotropyResult,
    SpacePoint,
    distance_to_graph,
    graph_sample,
    isotropy_defect,
    shear,
    shear_inverse,
    shear_points,
)
from .hull_criterion import (
    DegenerateSymbolError,
    FactorizationError,
    FactorVerdict,
    HullCandidate,
    HullReport,
    TorusCurve,
    UnsupportedFactorError,
    VConditionResult,
    assemble_hull,
    build_criterion_data,
    check_v_condition,
    hull_candidate_for,
    infer_unit,
    trace_torus_zero_set,
    verify_factorization,
)
from .laurent import (
    LaurentPoly2,
    LaurentSyntaxError,
    PoleError,
    det2,
    format_canonical,
    parse,
)
from .presets import (
    DEFAULT_FACTOR_EXPRS,
    DEFAULT_RATIO_EXPR,
    DEFAULT_SYMBOL_EXPR,
    DEFAULT_UNIT_EXPR,
    default_factors,
    default_symbol,
    default_unit,
)
from .separation import (
    MembershipCertificate,
    SeparationCertificate,
    SeparationOutcome,
    certify_membership,
    outside_panel,
    separate,
)
from .variety import (
    BranchPointOnBoundaryError,
    ContainmentResult,
    ContinuationError,
    MultipleBranchPointError,
    RationalFunction,
    VarietyChart,
    containment_check,
    residual_on_variety,
    trace_variety,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly2",
    "LaurentSyntaxError",
    "PoleError",
    "det2",
    "format_canonical",
    "parse",
    "DEFAULT_SYMBOL_EXPR",
    "DEFAULT_UNIT_EXPR",
    "DEFAULT_FACTOR_EXPRS",
    "DEFAULT_RATIO_EXPR",
    "default_symbol",
    "default_unit",
    "default_factors",
    "DegenerateSymbolError",
    "UnsupportedFactorError",
    "FactorizationError",
    "TorusCurve",
    "HullCandidate",
    "VConditionResult",
    "FactorVerdict",
    "HullReport",
    "build_criterion_data",
    "infer_unit",
    "verify_factorization",
    "trace_torus_zero_set",
    "hull_candidate_for",
    "check_v_condition",
    "assemble_hull",
    "RationalFunction",
    "VarietyChart",
    "ContainmentResult",
    "BranchPointOnBoundaryError",
    "MultipleBranchPointError",
    "ContinuationError",
    "trace_variety",
    "containment_check",
    "residual_on_variety",
    "GraphSpec",
    "SpacePoint",
    "IsotropyResult",
    "graph_sample",
    "shear",
    "shear_inverse",
    "shear_points",
    "isotropy_defect",
    "distance_to_graph",
    "SeparationCertificate",
    "SeparationOutcome",
    "MembershipCertificate",
    "separate",
    "certify_membership",
    "outside_panel",
    "BoundaryLoop",
    "DefectResult",
    "WindingScan",
    "defect",
    "minimize_defect",
    "gradient_check",
    "winding_scan",
    "__version__",
]

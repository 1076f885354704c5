"""Exact rational convex-polyhedral calculus with certified verdicts.

Everything is computed over Fractions; no floats enter any decision.
Geometric predicates return certificates (dual multipliers, separating
functionals, normal-cone generators) that independent checkers re-verify.
"""
from .calculus import (
    InfConvolutionValue,
    IntersectionRuleResult,
    QcReport,
    SupportIntersectionVerdict,
    SupportValue,
    common_point,
    core_at_zero,
    difference_interiority,
    inf_convolution_support,
    intersection_rule,
    qualification_report,
    standard_probes,
    support_intersection_theorem,
    support_value,
)
from .cones import (
    PolyhedralCone,
    cone_intersect,
    cone_sum,
    cone_sum_decompose,
    cones_equal,
    ep_condition,
    make_cone,
    normal_cone,
)
from .errors import (
    CapacityError,
    FormatError,
    InputError,
    InternalError,
    PolyhedralError,
    PreconditionError,
)
from .extremality import (
    ApproxEpCertificate,
    ExtremalityVerdict,
    SeparationCertificate,
    approximate_extremal_principle,
    check_sufficient_interiority,
    exact_extremal_principle,
    find_perturbation,
    is_extremal_system,
    separate,
    support_point_near,
    verify_approx_ep,
)
from .instances import (
    InstanceDocument,
    fixture_names,
    load_instance,
    parse_document,
    parse_vector,
    serialize_document,
)
from .lp import (
    FREE,
    NONNEG,
    NONPOS,
    LinearProgram,
    LpInfeasible,
    LpOptimal,
    LpUnbounded,
    make_program,
    solve_lp,
    verify_certificate,
)
from .sets import ConvexSet, HRep, VRep, ball_inf, sets_equal
from .suite import SuiteResult, SweepOutcome, run_suite
from .svgplot import render_scene

__all__ = [
    "ApproxEpCertificate",
    "CapacityError",
    "ConvexSet",
    "ExtremalityVerdict",
    "FormatError",
    "FREE",
    "HRep",
    "InfConvolutionValue",
    "InputError",
    "InstanceDocument",
    "InternalError",
    "IntersectionRuleResult",
    "LinearProgram",
    "LpInfeasible",
    "LpOptimal",
    "LpUnbounded",
    "NONNEG",
    "NONPOS",
    "PolyhedralCone",
    "PolyhedralError",
    "PreconditionError",
    "QcReport",
    "SeparationCertificate",
    "SuiteResult",
    "SupportIntersectionVerdict",
    "SupportValue",
    "SweepOutcome",
    "VRep",
    "ball_inf",
    "check_sufficient_interiority",
    "common_point",
    "cone_intersect",
    "cone_sum",
    "cone_sum_decompose",
    "cones_equal",
    "core_at_zero",
    "difference_interiority",
    "ep_condition",
    "exact_extremal_principle",
    "find_perturbation",
    "fixture_names",
    "inf_convolution_support",
    "intersection_rule",
    "is_extremal_system",
    "load_instance",
    "make_cone",
    "make_program",
    "normal_cone",
    "parse_document",
    "parse_vector",
    "qualification_report",
    "render_scene",
    "run_suite",
    "separate",
    "serialize_document",
    "sets_equal",
    "solve_lp",
    "standard_probes",
    "support_intersection_theorem",
    "support_point_near",
    "support_value",
    "verify_approx_ep",
    "verify_certificate",
]

__version__ = "0.1.0"

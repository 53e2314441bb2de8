"""Exact group calculus for basic transformations of parabolic bundles
over a curve with marked points, with a torsion model of the Picard group.
"""

from .classify import (
    ModuliDescriptor,
    bridge_transformation,
    curves_isomorphic,
    torelli_3birational,
    verify_decomposition,
    weight_system_for,
)
from .curve import (
    CurveAutomorphism,
    CurveModel,
    MarkedPoint,
    load_config,
    point_class,
    validate_model,
)
from .dsl import (
    divisor_form,
    eval_expression,
    format_canonical,
    parse_expression,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    EnumerationCapExceeded,
    ExtendedCompositionError,
    HeckeOutOfRange,
    ModelError,
    NotGeneric,
    NotInvertible,
    ParseError,
    PartransError,
    ShapeMismatch,
    UnknownAutomorphism,
    UnknownPoint,
)
from .extended import (
    ExtendedTransformation,
    act_A,
    act_ext,
    automorphism_group_report,
    compose_ext,
    conjugate_tilde,
    default_ref_det,
    describe_ext,
    ext_inverse,
    identity_ext,
    lift_basic,
)
from .picard import (
    DEFAULT_ENUM_CAP,
    JacobianAutomorphism,
    JacobianElement,
    LineBundleClass,
    apply_jac_aut,
    apply_jac_aut_line,
    divide_by_r,
    frac_to_str,
    jac_aut_inverse,
    lincomb,
    make_jac_aut,
    of_divisor,
    pullback,
    r_torsion,
    tilde_compose,
)
from .transform import (
    BasicTransformation,
    Divisor,
    ParabolicInvariant,
    act_degree,
    act_det,
    act_invariant,
    act_weights,
    compose,
    describe,
    identity_transform,
    inverse,
    make_basic,
    normalize_word,
    stabilizer_d_alpha_quotient,
    stabilizer_xi,
    subgroup_membership,
    t_d_quotient_reps,
)
from .weights import (
    ChamberFingerprint,
    WallDatum,
    WeightSystem,
    canonicalize,
    chamber_fingerprint,
    dual_weights,
    hecke_weights,
    is_generic,
    parabolic_degree,
    same_chamber,
)

__version__ = "0.1.0"

__all__ = [
    "BasicTransformation",
    "ChamberFingerprint",
    "ConfigError",
    "CurveAutomorphism",
    "CurveModel",
    "DEFAULT_ENUM_CAP",
    "DimensionMismatch",
    "Divisor",
    "EnumerationCapExceeded",
    "ExtendedCompositionError",
    "ExtendedTransformation",
    "HeckeOutOfRange",
    "JacobianAutomorphism",
    "JacobianElement",
    "LineBundleClass",
    "MarkedPoint",
    "ModelError",
    "ModuliDescriptor",
    "NotGeneric",
    "NotInvertible",
    "ParabolicInvariant",
    "ParseError",
    "PartransError",
    "ShapeMismatch",
    "UnknownAutomorphism",
    "UnknownPoint",
    "WallDatum",
    "WeightSystem",
    "act_A",
    "apply_jac_aut",
    "apply_jac_aut_line",
    "act_degree",
    "act_det",
    "act_ext",
    "act_invariant",
    "act_weights",
    "automorphism_group_report",
    "bridge_transformation",
    "canonicalize",
    "chamber_fingerprint",
    "compose",
    "compose_ext",
    "conjugate_tilde",
    "curves_isomorphic",
    "default_ref_det",
    "describe",
    "describe_ext",
    "divide_by_r",
    "divisor_form",
    "dual_weights",
    "eval_expression",
    "ext_inverse",
    "format_canonical",
    "frac_to_str",
    "hecke_weights",
    "identity_ext",
    "identity_transform",
    "inverse",
    "is_generic",
    "jac_aut_inverse",
    "lift_basic",
    "lincomb",
    "load_config",
    "make_basic",
    "make_jac_aut",
    "normalize_word",
    "of_divisor",
    "parabolic_degree",
    "parse_expression",
    "point_class",
    "pullback",
    "r_torsion",
    "same_chamber",
    "stabilizer_d_alpha_quotient",
    "stabilizer_xi",
    "subgroup_membership",
    "t_d_quotient_reps",
    "tilde_compose",
    "torelli_3birational",
    "validate_model",
    "verify_decomposition",
    "weight_system_for",
]

"""Finite-group and fusion-system computations at desk scale.

Core objects: :class:`Group` (multiplication table), :class:`Subgroup`
(member-index set), :class:`GroupMap` (extensional homomorphism),
:class:`FusionSystem` (morphism-set oracle), plus executable checks for
control of p-fusion and the small-exponent detection machinery.
"""

from .core import (
    Group,
    GroupMap,
    Subgroup,
    all_subgroups,
    centralizer,
    commutator_subgroup,
    exponent,
    generate,
    is_elementary_abelian,
    is_strongly_p_embedded,
    normalizer,
    omega,
    p_rank,
    quotient_group,
    sylow_subgroup,
    transporter,
)
from .automorphisms import (
    AutGroup,
    automorphism_group,
    characteristic_subgroups,
    critical_subgroup,
    homomorphisms,
    isomorphism,
    maximal_abelian_in,
    thompson_subgroup,
    verify_p2_identity,
)
from .catalog import (
    CatalogPair,
    GroupExpr,
    build,
    catalog_names,
    catalog_pairs,
    counterexample_rank2,
    gn_hn,
    named_pair,
    parse_expr,
)
from .fusion import (
    FusionSystem,
    RepClassSet,
    check_saturation,
    essential_subgroups,
    fusion_equal_on,
    generated_closure,
    rep_classes,
    rep_classes_fusion,
    rep_zpn_classes,
)
from .report import VerificationReport
from .errors import (
    CapExceededError,
    ExprParseError,
    GroupInvariantError,
    ParentMismatchError,
    PFusionError,
    PreconditionError,
)

__all__ = [
    "Group",
    "GroupMap",
    "Subgroup",
    "AutGroup",
    "FusionSystem",
    "RepClassSet",
    "VerificationReport",
    "CatalogPair",
    "GroupExpr",
    "all_subgroups",
    "automorphism_group",
    "build",
    "catalog_names",
    "catalog_pairs",
    "centralizer",
    "characteristic_subgroups",
    "check_saturation",
    "commutator_subgroup",
    "counterexample_rank2",
    "critical_subgroup",
    "essential_subgroups",
    "exponent",
    "fusion_equal_on",
    "generate",
    "generated_closure",
    "gn_hn",
    "homomorphisms",
    "is_elementary_abelian",
    "is_strongly_p_embedded",
    "isomorphism",
    "maximal_abelian_in",
    "named_pair",
    "normalizer",
    "omega",
    "p_rank",
    "parse_expr",
    "quotient_group",
    "rep_classes",
    "rep_classes_fusion",
    "rep_zpn_classes",
    "sylow_subgroup",
    "thompson_subgroup",
    "transporter",
    "verify_p2_identity",
    "CapExceededError",
    "ExprParseError",
    "GroupInvariantError",
    "ParentMismatchError",
    "PFusionError",
    "PreconditionError",
]

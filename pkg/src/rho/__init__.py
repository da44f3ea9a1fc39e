"""Exact-arithmetic rational homotopy toolkit.

Sullivan minimal models and formality tests for differential graded
algebras, a two-differential metric formality engine with machine-checked
certificates, bigraded Frobenius algebras with hard Lefschetz sl(2)
actions, and Calabi-Yau volume-regrading packages with Yukawa couplings
and mirror-pair verification.  All arithmetic is exact over Q or Q(i).
"""

from .dga import (
    CohomologyRing,
    FreeDGA,
    Morphism,
    TabularDGA,
    check_derivation,
    check_morphism,
    cohomology,
    is_quasi_isomorphism,
    tensor,
    trivial_dga,
)
from .errors import InternalConsistencyError, PreconditionError, SchemaError
from .freealg import FreeAlgebra, Polynomial
from .frobenius import (
    BigradedFrobenius,
    RationalStructure,
    Sl2Rep,
    build_frobenius,
    check_lefschetz_type,
    hard_lefschetz_check,
    rational_structure_check,
)
from .hodge import (
    FormalityCertificate,
    GradedOperator,
    MetricBicomplex,
    adjoint_operator,
    check_kahler_identities,
    circ_product,
    fivefold_decomposition,
    formality_certificate,
    harmonic_projection,
    verify_hypotheses,
)
from .minimal import (
    MinimalModel,
    build_minimal_model,
    formality_test_direct,
    homotopy_ranks,
    indecomposables,
    massey_triple,
    shifted_lie_cobracket,
)
from .mirror import (
    CalabiYauPackage,
    build_cy,
    b_simply_connected_check,
    hyperkahler_self_mirror,
    mirror_check,
    rational_homotopy_from_b,
    tilde_sl2,
    tilde_transport,
    yukawa,
)
from .scalars import QI, QQ, GaussianRational, ScalarField

__all__ = [
    "BigradedFrobenius", "CalabiYauPackage", "CohomologyRing",
    "FormalityCertificate", "FreeAlgebra", "FreeDGA", "GaussianRational",
    "GradedOperator", "InternalConsistencyError", "MetricBicomplex",
    "MinimalModel", "Morphism", "Polynomial", "PreconditionError", "QI", "QQ",
    "RationalStructure", "ScalarField", "SchemaError", "Sl2Rep", "TabularDGA",
    "adjoint_operator", "b_simply_connected_check", "build_cy",
    "build_frobenius", "build_minimal_model", "check_derivation",
    "check_kahler_identities", "check_lefschetz_type", "check_morphism",
    "circ_product", "cohomology", "fivefold_decomposition",
    "formality_certificate", "formality_test_direct", "hard_lefschetz_check",
    "harmonic_projection", "homotopy_ranks", "hyperkahler_self_mirror",
    "indecomposables", "is_quasi_isomorphism", "massey_triple", "mirror_check",
    "rational_homotopy_from_b", "rational_structure_check",
    "shifted_lie_cobracket", "tensor", "tilde_sl2", "tilde_transport",
    "trivial_dga", "yukawa",
]

__version__ = "0.1.0"

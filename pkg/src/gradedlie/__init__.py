"""Exact computations with naturally graded nilpotent Lie algebras.

Structure constants, structure equations, the invariants used to
classify algebras with linear characteristic sequence, second cohomology
with trivial coefficients, and a catalog of the classified models.
"""
from .catalog import ModelId, build_model, enumerate_models, expected_invariants
from .cohomology import (
    TwoCochain,
    central_extension,
    cocycle_spaces,
    enumerate_graded_linear_extensions,
    homogeneous_cocycles,
)
from .errors import (
    GradedLieError,
    InputError,
    InvariantViolation,
    MCSyntaxError,
    NotNilpotentError,
    ParameterError,
    PreconditionError,
)
from .invariants import (
    associated_graded,
    center,
    char_seq_of,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    is_linear,
    lower_central_series,
    nilindex,
)
from .liecore import (
    LieAlgebra,
    StructureTensor,
    ad_matrix,
    bracket,
    central_quotient,
    change_of_basis,
    direct_sum,
    jacobi_defects,
)
from .mcdsl import parse_mc, render_mc
from .verify import VerificationReport, verify_catalog

__version__ = "0.1.0"

__all__ = [
    "GradedLieError",
    "InputError",
    "InvariantViolation",
    "LieAlgebra",
    "MCSyntaxError",
    "ModelId",
    "NotNilpotentError",
    "ParameterError",
    "PreconditionError",
    "StructureTensor",
    "TwoCochain",
    "VerificationReport",
    "ad_matrix",
    "associated_graded",
    "bracket",
    "build_model",
    "center",
    "central_extension",
    "central_quotient",
    "change_of_basis",
    "char_seq_of",
    "characteristic_sequence",
    "cocycle_spaces",
    "direct_sum",
    "enumerate_graded_linear_extensions",
    "enumerate_models",
    "expected_invariants",
    "graded_certificate",
    "has_abelian_direct_factor",
    "homogeneous_cocycles",
    "is_linear",
    "jacobi_defects",
    "lower_central_series",
    "nilindex",
    "parse_mc",
    "render_mc",
    "verify_catalog",
]

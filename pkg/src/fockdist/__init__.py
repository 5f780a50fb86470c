"""Spectral triple of the 4D quantum phase space on truncated Fock bases,
with Connes distances between 2D oscillator states by three routes."""

from .distance import (
    DiagonalElement,
    DistanceResult,
    StatePair,
    TriangleReport,
    ansatz_distance,
    asymptotic_check,
    closed_form_distance,
    numeric_distance,
    optimal_element_adjacent,
    optimal_element_far,
    verify_triangle,
)
from .exceptions import (
    BasisMismatchError,
    ConfigurationError,
    NonHermitianError,
    TruncationUnsafeError,
    TruncationWarning,
)
from .fock import (
    FockIndex,
    MatrixOperator,
    TruncatedBasis,
    build_basis,
    commutator,
    ladder_matrix,
    position_momentum_matrix,
)
from .spectral import (
    DiracBlock,
    GammaSet,
    PhaseSpaceParams,
    PhaseSpaceReport,
    ball_norm,
    build_gammas,
    d1_block,
    dirac_operator,
    operator_norm,
    support_margin_ok,
    verify_phase_space_rep,
)

__version__ = "0.1.0"

__all__ = [
    "FockIndex",
    "TruncatedBasis",
    "MatrixOperator",
    "build_basis",
    "ladder_matrix",
    "position_momentum_matrix",
    "commutator",
    "GammaSet",
    "DiracBlock",
    "PhaseSpaceParams",
    "PhaseSpaceReport",
    "build_gammas",
    "dirac_operator",
    "d1_block",
    "operator_norm",
    "ball_norm",
    "support_margin_ok",
    "verify_phase_space_rep",
    "DiagonalElement",
    "StatePair",
    "DistanceResult",
    "TriangleReport",
    "closed_form_distance",
    "optimal_element_adjacent",
    "optimal_element_far",
    "ansatz_distance",
    "numeric_distance",
    "verify_triangle",
    "asymptotic_check",
    "ConfigurationError",
    "BasisMismatchError",
    "NonHermitianError",
    "TruncationUnsafeError",
    "TruncationWarning",
]

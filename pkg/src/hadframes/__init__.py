"""Hadamard-based equiangular tight frames and Grassmannian fusion frames.

Constructions from sign matrices with exact rational certificates
(tightness, equiangularity, Welch equality, equal chordal distances) and
a seeded Monte-Carlo channel for noise/erasure robustness experiments.
"""

from .channel import (
    ChannelConfig,
    ErasureSpec,
    SimReport,
    compare,
    simulate_frame,
    simulate_fusion,
)
from .errors import ResourceLimitError, ValidationError
from .frames import (
    CoherenceReport,
    FrameCertificate,
    ScaledFrame,
    analyze,
    coherence,
    etf_from_hadamard,
    float_coherence_sq,
    float_frame_bounds,
    frame_from_integer_columns,
    gram,
    grassmannian_certificate,
    is_equiangular,
    is_tight,
    reconstruct_tight,
    synthesis_matrix,
    welch_bound_sq,
)
from .fusion import (
    FusionCertificate,
    FusionFrame,
    Subspace,
    build_gff,
    chordal_dist,
    chordal_dist_sq,
    equidistance_certificate,
    fusion_analyze,
    fusion_reconstruct_tight,
    fusion_tight,
    lemma_row_check,
    make_fusion_frame,
    projection,
    subspace_from_columns,
)
from .hadamard import (
    MatrixCertificate,
    SignMatrix,
    WalshMatrix,
    build_sylvester,
    build_walsh,
    fwht,
    normalize_first_row,
    require_hadamard,
    sign_changes,
    sign_matrix,
    validate_hadamard,
    validate_walsh_order,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig",
    "CoherenceReport",
    "ErasureSpec",
    "FrameCertificate",
    "FusionCertificate",
    "FusionFrame",
    "MatrixCertificate",
    "ResourceLimitError",
    "ScaledFrame",
    "SignMatrix",
    "SimReport",
    "Subspace",
    "ValidationError",
    "WalshMatrix",
    "analyze",
    "build_gff",
    "build_sylvester",
    "build_walsh",
    "chordal_dist",
    "chordal_dist_sq",
    "coherence",
    "compare",
    "equidistance_certificate",
    "etf_from_hadamard",
    "float_coherence_sq",
    "float_frame_bounds",
    "frame_from_integer_columns",
    "fusion_analyze",
    "fusion_reconstruct_tight",
    "fusion_tight",
    "fwht",
    "gram",
    "grassmannian_certificate",
    "is_equiangular",
    "is_tight",
    "lemma_row_check",
    "make_fusion_frame",
    "normalize_first_row",
    "projection",
    "reconstruct_tight",
    "require_hadamard",
    "sign_changes",
    "sign_matrix",
    "simulate_frame",
    "simulate_fusion",
    "subspace_from_columns",
    "synthesis_matrix",
    "validate_hadamard",
    "validate_walsh_order",
    "welch_bound_sq",
]

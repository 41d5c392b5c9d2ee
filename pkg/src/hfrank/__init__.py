"""Combinatorial Floer homology ranks of surface mapping classes.

Pseudo-Anosov maps are handled through an invariant train track and its
carrying data, Penner words through an explicit track built from the
curve system, and reducible maps through a typed decomposition.
"""

from .carrying import (
    CarryingMap,
    CarryingSummary,
    FixedPointCensus,
    SingularityCensus,
    automorphism_carrying,
    cellular_lefschetz,
    compose,
    grading,
    incidence_matrix,
    rank,
    validate_carrying,
)
from .errors import HFError
from .penner import (
    PennerCurveSystem,
    TwistWord,
    canonical_word,
    closed_formula,
    penner_rank,
    symmetry_carrying,
    word_summary,
)
from .reducible import DecompositionSpec, HFSummary, rel_homology_ranks, total_rank
from .spectral import dominant_eig, is_primitive
from .traintrack import Surface, TrainTrack, build_track, check_geometry, compute_faces

__all__ = [
    "CarryingMap",
    "CarryingSummary",
    "DecompositionSpec",
    "FixedPointCensus",
    "HFError",
    "HFSummary",
    "PennerCurveSystem",
    "SingularityCensus",
    "Surface",
    "TrainTrack",
    "TwistWord",
    "automorphism_carrying",
    "build_track",
    "canonical_word",
    "cellular_lefschetz",
    "check_geometry",
    "closed_formula",
    "compose",
    "compute_faces",
    "dominant_eig",
    "grading",
    "incidence_matrix",
    "is_primitive",
    "penner_rank",
    "rank",
    "rel_homology_ranks",
    "symmetry_carrying",
    "total_rank",
    "validate_carrying",
    "word_summary",
]

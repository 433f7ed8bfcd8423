"""Prototype-based interpretable classification over conceptual spaces."""

from .classifier import (
    ClassificationResult,
    RepresentativenessVector,
    classify,
    eval_membership,
    representativeness,
    typicality,
    voronoi_assign,
)
from .errors import (
    ConceptSpaceError,
    InsufficientDataError,
    InvalidInputError,
    InvalidModelError,
    NoOverlapError,
    NotFoundError,
)
from .explain import ExplanationReport, WhatIfRequest, WhatIfResult, explain, feature_importance, whatif
from .learning import Dataset, TrainingConfig, estimate_membership, estimate_weight, learn_prototype, train
from .model import (
    Concept,
    ConceptualSpace,
    DimensionSpec,
    Instance,
    MembershipFunction,
    Violation,
    standardize,
    validate_space,
)
from .serialization import load_space, model_hash, save_space

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "Concept",
    "ConceptSpaceError",
    "ConceptualSpace",
    "Dataset",
    "DimensionSpec",
    "ExplanationReport",
    "InsufficientDataError",
    "Instance",
    "InvalidInputError",
    "InvalidModelError",
    "MembershipFunction",
    "NoOverlapError",
    "NotFoundError",
    "RepresentativenessVector",
    "TrainingConfig",
    "Violation",
    "WhatIfRequest",
    "WhatIfResult",
    "classify",
    "estimate_membership",
    "estimate_weight",
    "eval_membership",
    "explain",
    "feature_importance",
    "learn_prototype",
    "load_space",
    "model_hash",
    "representativeness",
    "save_space",
    "standardize",
    "train",
    "typicality",
    "validate_space",
    "voronoi_assign",
    "whatif",
]

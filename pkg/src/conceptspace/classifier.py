"""Typicality scoring and categorization.

An instance is projected onto each concept as a vector whose i-th coordinate
is sqrt(w_i / sum_k w_k) * mu_i, where mu_i is the membership of the
instance's value on dimension i and the weights are normalized over the
dimensions the instance actually supplies. Typicality is the Euclidean norm
of that vector, so it lives in [0, 1] and reaches 1 exactly when every
supplied membership is 1. The winning concept is the one with the highest
typicality; a win by less than delta is flagged disputable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import InvalidInputError, InvalidModelError, NoOverlapError
from .model import (
    DEFAULT_DELTA,
    GAUSSIAN,
    NOMINAL_TABLE,
    Concept,
    ConceptualSpace,
    Instance,
    MembershipFunction,
    standardize,
)


@dataclass(frozen=True)
class RepresentativenessVector:
    """Per-dimension coordinates of an instance in a concept's frame."""

    concept: str
    components: Mapping[str, float]
    norm: float


@dataclass(frozen=True)
class ClassificationResult:
    winner: str | None
    scores: Mapping[str, float]
    disputable: bool
    margin: float
    per_dimension: Mapping[str, Mapping[str, Mapping[str, float]]]
    warnings: tuple[str, ...] = ()


def eval_membership(mf: MembershipFunction, value: Any) -> float:
    """Evaluate one membership function, floored at its configured minimum.

    Gaussian functions expect the value already standardized to [0, 1];
    nominal tables look the raw category value up and fall back to the floor
    for unseen categories.
    """
    if mf.kind == GAUSSIAN:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InvalidInputError(f"gaussian membership needs a numeric value, got {value!r}")
        d = float(value) - mf.center
        return max(math.exp(-(d * d) / (2.0 * mf.width * mf.width)), mf.floor)
    if mf.kind == NOMINAL_TABLE:
        if isinstance(value, float) and not isinstance(value, bool):
            raise InvalidInputError(f"table membership needs a category value, got {value!r}")
        mu = (mf.table or {}).get(value, mf.floor)
        return max(mu, mf.floor)
    raise InvalidInputError(f"unknown membership kind {mf.kind!r}")


def _membership_for(space: ConceptualSpace, concept: Concept, dim: str, raw_value: Any) -> float:
    spec = space.dimension(dim)
    mf = concept.memberships[dim]
    if spec.is_continuous:
        z = standardize(float(raw_value), spec, space.standardization[dim])
        return eval_membership(mf, z)
    return eval_membership(mf, raw_value)


def _shared_dimensions(instance: Instance, concept: Concept) -> list[str]:
    return sorted(set(instance.values) & set(concept.weights))


def representativeness(instance: Instance, concept: Concept, space: ConceptualSpace) -> RepresentativenessVector:
    """Project the instance into the concept's weighted membership frame.

    Dimensions the instance does not supply are dropped from both the
    coordinates and the weight normalizer, so sensor dropout reduces the
    evidence instead of annihilating the score.
    """
    dims = _shared_dimensions(instance, concept)
    if not dims:
        raise NoOverlapError(f"instance {instance.id!r} shares no dimension with concept {concept.id!r}")
    total_w = math.fsum(concept.weights[d] for d in dims)
    components = {}
    for d in dims:
        mu = _membership_for(space, concept, d, instance.values[d])
        components[d] = math.sqrt(concept.weights[d] / total_w) * mu
    norm = math.sqrt(math.fsum(c * c for c in components.values()))
    return RepresentativenessVector(concept=concept.id, components=components, norm=norm)


def typicality(instance: Instance, concept: Concept, space: ConceptualSpace) -> float:
    """Norm-based typicality in [0, 1]; 1 iff every supplied membership is 1."""
    dims = _shared_dimensions(instance, concept)
    if not dims:
        raise NoOverlapError(f"instance {instance.id!r} shares no dimension with concept {concept.id!r}")
    total_w = math.fsum(concept.weights[d] for d in dims)
    weighted = math.fsum(
        concept.weights[d] * _membership_for(space, concept, d, instance.values[d]) ** 2 for d in dims
    )
    return math.sqrt(weighted / total_w)


def classify(
    instance: Instance,
    space: ConceptualSpace,
    delta: float = DEFAULT_DELTA,
    min_typicality: float | None = None,
) -> ClassificationResult:
    """Argmax categorization with disputable-margin flagging.

    Concepts sharing no dimension with the instance score 0 and produce a
    warning. Ties go to the lexicographically smallest concept id and are
    always disputable. With ``min_typicality`` set, a top score below it
    yields winner None (no known concept fits).
    """
    if not space.concepts:
        raise InvalidModelError("space holds no concepts")
    if not instance.values:
        raise InvalidInputError(f"instance {instance.id!r} supplies no values")
    scores: dict[str, float] = {}
    per_dimension: dict[str, dict[str, dict[str, float]]] = {}
    warnings: list[str] = []
    for cid in sorted(space.concepts):
        concept = space.concepts[cid]
        dims = _shared_dimensions(instance, concept)
        if not dims:
            scores[cid] = 0.0
            per_dimension[cid] = {}
            warnings.append(f"concept {cid!r} shares no dimension with the instance; scored 0")
            continue
        total_w = math.fsum(concept.weights[d] for d in dims)
        mus = {d: _membership_for(space, concept, d, instance.values[d]) for d in dims}
        weighted = math.fsum(concept.weights[d] * mus[d] ** 2 for d in dims)
        score = math.sqrt(weighted / total_w)
        scores[cid] = score
        breakdown = {}
        for d in dims:
            w_norm = concept.weights[d] / total_w
            contribution = (w_norm * mus[d] ** 2) / (score * score) if score > 0 else 0.0
            breakdown[d] = {"mu": mus[d], "w": concept.weights[d], "w_norm": w_norm, "contribution": contribution}
        per_dimension[cid] = breakdown
    ordered = sorted(scores, key=lambda c: (-scores[c], c))
    winner = ordered[0]
    second = scores[ordered[1]] if len(ordered) > 1 else 0.0
    margin = scores[winner] - second
    disputable = margin < delta or (len(ordered) > 1 and margin == 0.0)
    if min_typicality is not None and scores[winner] < min_typicality:
        winner = None
        disputable = True
    return ClassificationResult(
        winner=winner,
        scores=scores,
        disputable=disputable,
        margin=margin,
        per_dimension=per_dimension,
        warnings=tuple(warnings),
    )


def voronoi_assign(point: Instance, space: ConceptualSpace) -> str:
    """Nearest-prototype assignment in the standardized space.

    Continuous dimensions use standardized Euclidean distance; nominal ones
    contribute 0 when the value matches the prototype and 1 otherwise.
    """
    if not space.concepts:
        raise InvalidModelError("space holds no concepts")
    for spec in space.dimensions:
        if spec.is_continuous and spec.id not in point.values:
            raise InvalidInputError(f"point {point.id!r} missing continuous dimension {spec.id!r}")
    best: tuple[float, str] | None = None
    for cid in sorted(space.concepts):
        concept = space.concepts[cid]
        dist2 = 0.0
        for d in sorted(concept.prototype):
            if not space.has_dimension(d):
                continue
            spec = space.dimension(d)
            if spec.is_continuous:
                bounds = space.standardization[d]
                zp = standardize(float(point.values[d]), spec, bounds)
                zc = standardize(float(concept.prototype[d]), spec, bounds)
                dist2 += (zp - zc) ** 2
            elif d in point.values:
                dist2 += 0.0 if point.values[d] == concept.prototype[d] else 1.0
        if best is None or dist2 < best[0]:
            best = (dist2, cid)
    return best[1]


def result_to_doc(result: ClassificationResult) -> dict:
    return {
        "winner": result.winner,
        "scores": {c: result.scores[c] for c in sorted(result.scores)},
        "disputable": result.disputable,
        "margin": result.margin,
        "per_dimension": {
            c: {d: dict(v) for d, v in sorted(result.per_dimension[c].items())}
            for c in sorted(result.per_dimension)
        },
        "warnings": list(result.warnings),
    }

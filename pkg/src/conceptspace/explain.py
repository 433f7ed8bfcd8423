"""Interpretable artifacts: per-dimension breakdowns, textual rationales,
feature importance, prototype exemplars, and counterfactual what-if probing.

The contribution of dimension i to a concept's score is the exact share
w_norm_i * mu_i^2 / R^2, so shares sum to 1 per concept and the rationale can
only ever cite dimensions that genuinely carried the decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from .classifier import ClassificationResult, classify, result_to_doc
from .errors import InvalidInputError
from .model import (
    DEFAULT_DELTA,
    Concept,
    ConceptualSpace,
    DimensionSpec,
    Instance,
    MembershipFunction,
)

# How many ranked factors the rationale text names.
RATIONALE_FACTORS = 2
SIMILAR_THRESHOLD = 0.5


@dataclass(frozen=True)
class ExplanationReport:
    result: ClassificationResult
    rationale: str
    top_factors: tuple[dict, ...]
    exemplar: Mapping[str, Mapping[str, Any]]
    chart_data: Mapping[str, Any]


@dataclass(frozen=True)
class WhatIfRequest:
    """A transient re-parameterization of the model and/or the instance.

    Weight overrides may go below the learned floor (down to just above 0)
    so a user can probe what happens when a dimension stops mattering.
    """

    instance: Instance
    weight_overrides: Mapping[str, Mapping[str, float]] = field(default_factory=dict)
    membership_overrides: Mapping[str, Mapping[str, dict]] = field(default_factory=dict)
    value_overrides: Mapping[str, Any] = field(default_factory=dict)
    delta: float = DEFAULT_DELTA


@dataclass(frozen=True)
class WhatIfResult:
    before: ClassificationResult
    after: ClassificationResult
    changed: bool
    delta_scores: Mapping[str, float]


def feature_importance(concept: Concept) -> list[dict]:
    """Weights normalized to sum 1, ranked descending (ties by dimension id)."""
    total = math.fsum(concept.weights.values())
    ranked = sorted(concept.weights.items(), key=lambda kv: (-kv[1], kv[0]))
    return [{"dimension": d, "weight": w / total} for d, w in ranked]


def _weight_rank(concept: Concept, dim: str) -> int:
    ranked = sorted(concept.weights.items(), key=lambda kv: (-kv[1], kv[0]))
    return 1 + [d for d, _ in ranked].index(dim)


def _gerund(verb: str) -> str:
    if verb.endswith("e") and not verb.endswith("ee"):
        return verb[:-1] + "ing"
    return verb + "ing"


def _utilisation_verb(dim_id: str) -> str:
    return dim_id.split(":")[-1]


def _winner_sentence(winner: str, instance: Instance, space: ConceptualSpace, breakdown: Mapping[str, Mapping[str, float]]) -> str:
    clauses = []
    physical_mus = [
        entry["mu"]
        for dim, entry in breakdown.items()
        if not space.dimension(dim).is_utilisation
    ]
    if physical_mus and math.fsum(physical_mus) / len(physical_mus) >= SIMILAR_THRESHOLD:
        clauses.append(f"it looks similar to other {winner}s I've seen in the past")
    for dim in sorted(breakdown):
        spec = space.dimension(dim)
        if spec.is_utilisation and instance.values.get(dim) == 1 and breakdown[dim]["mu"] >= SIMILAR_THRESHOLD:
            clauses.append(f"it is used for {_gerund(_utilisation_verb(dim))}")
    if not clauses:
        clauses.append("it is the closest of the concepts I know")
    return f"I believe this is a {winner} as " + ", and ".join(clauses) + "."


def _factor_sentence(factor: dict) -> str:
    wording = "similar" if factor["mu"] >= SIMILAR_THRESHOLD else "dissimilar"
    return (
        f"It is {wording} to {factor['concept']} on {factor['dimension']} "
        f"(mu = {factor['mu']:.2f}, weight rank {factor['weight_rank']})."
    )


def explain(instance: Instance, space: ConceptualSpace, delta: float = DEFAULT_DELTA) -> ExplanationReport:
    """Classify and decompose the outcome into human-readable artifacts."""
    result = classify(instance, space, delta)
    winner = result.winner
    breakdown = result.per_dimension.get(winner, {}) if winner else {}
    concept = space.concepts[winner] if winner else None
    factors = []
    for dim in sorted(breakdown, key=lambda d: (-breakdown[d]["contribution"], d)):
        entry = breakdown[dim]
        factors.append(
            {
                "dimension": dim,
                "concept": winner,
                "w": entry["w"],
                "mu": entry["mu"],
                "contribution": entry["contribution"],
                "weight_rank": _weight_rank(concept, dim),
            }
        )
    sentences = []
    if result.disputable:
        ordered = sorted(result.scores, key=lambda c: (-result.scores[c], c))
        runner_up = ordered[1] if len(ordered) > 1 else None
        if runner_up is not None:
            sentences.append(
                f"This classification is disputable: {runner_up} scores nearly as high "
                f"(margin {result.margin:.3f})."
            )
    if winner:
        sentences.append(_winner_sentence(winner, instance, space, breakdown))
        for factor in factors[:RATIONALE_FACTORS]:
            sentences.append(_factor_sentence(factor))
    else:
        sentences.append("None of the known concepts fits this instance well enough.")
    exemplar = {cid: dict(space.concepts[cid].prototype) for cid in sorted(space.concepts)}
    ordered_concepts = sorted(result.scores, key=lambda c: (-result.scores[c], c))
    spider_dims = [d.id for d in space.dimensions if d.id in instance.values]
    chart_data = {
        "bar": {
            "labels": ordered_concepts,
            "series": [{"name": "typicality", "values": [result.scores[c] for c in ordered_concepts]}],
        },
        "spider": {
            "labels": spider_dims,
            "series": [
                {
                    "name": cid,
                    "values": [result.per_dimension[cid].get(d, {}).get("mu") for d in spider_dims],
                }
                for cid in sorted(result.scores)
            ],
        },
    }
    return ExplanationReport(
        result=result,
        rationale=" ".join(sentences),
        top_factors=tuple(factors),
        exemplar=exemplar,
        chart_data=chart_data,
    )


def _validated_weight(concept: str, dim: str, value: Any) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not (0.0 < float(value) <= 1.0):
        raise InvalidInputError(f"weight override for ({concept!r}, {dim!r}) must lie in (0, 1], got {value!r}")
    return float(value)


def _override_membership(base: MembershipFunction, spec: DimensionSpec, concept: str, doc: dict) -> MembershipFunction:
    if not isinstance(doc, dict):
        raise InvalidInputError(f"membership override for ({concept!r}, {spec.id!r}) must be an object")
    if spec.is_continuous:
        center = doc.get("center", base.center)
        width = doc.get("width", base.width)
        if not isinstance(width, (int, float)) or not (width > 0):
            raise InvalidInputError(f"membership override for ({concept!r}, {spec.id!r}): width must be > 0")
        return MembershipFunction.gaussian(float(center), float(width), base.floor)
    table_doc = doc.get("table")
    if table_doc is None:
        raise InvalidInputError(f"membership override for ({concept!r}, {spec.id!r}): nominal dimension needs a table")
    table = {}
    for k, mu in table_doc.items():
        cat = int(k) if spec.kind == "binary" else k
        if not isinstance(mu, (int, float)) or not (0.0 < mu <= 1.0):
            raise InvalidInputError(f"membership override for ({concept!r}, {spec.id!r}): value for {k!r} must lie in (0, 1]")
        table[cat] = float(mu)
    merged = dict(base.table or {})
    merged.update(table)
    return MembershipFunction.nominal_table(merged, base.floor)


def _validated_value(spec: DimensionSpec, value: Any) -> Any:
    if spec.is_continuous:
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(float(value)):
            raise InvalidInputError(f"value override for {spec.id!r} must be a finite number, got {value!r}")
        return float(value)
    if spec.kind == "binary":
        if value not in (0, 1):
            raise InvalidInputError(f"value override for {spec.id!r} must be 0 or 1, got {value!r}")
        return int(value)
    if not isinstance(value, str):
        raise InvalidInputError(f"value override for {spec.id!r} must be a category string, got {value!r}")
    return value


def _apply_overrides(request: WhatIfRequest, space: ConceptualSpace) -> tuple[Instance, ConceptualSpace]:
    for cid in list(request.weight_overrides) + list(request.membership_overrides):
        if cid not in space.concepts:
            raise InvalidInputError(f"override names unknown concept {cid!r}")
    new_concepts: dict[str, Concept] = {}
    for cid in sorted(space.concepts):
        concept = space.concepts[cid]
        w_over = request.weight_overrides.get(cid, {})
        m_over = request.membership_overrides.get(cid, {})
        if not w_over and not m_over:
            new_concepts[cid] = concept
            continue
        weights = dict(concept.weights)
        for dim, value in w_over.items():
            if dim not in weights:
                raise InvalidInputError(f"override names unknown dimension {dim!r} for concept {cid!r}")
            weights[dim] = _validated_weight(cid, dim, value)
        memberships = dict(concept.memberships)
        for dim, doc in m_over.items():
            if dim not in memberships:
                raise InvalidInputError(f"override names unknown dimension {dim!r} for concept {cid!r}")
            memberships[dim] = _override_membership(memberships[dim], space.dimension(dim), cid, doc)
        new_concepts[cid] = Concept(
            id=cid, prototype=concept.prototype, memberships=memberships, weights=weights, support=concept.support
        )
    values = dict(request.instance.values)
    for dim, value in request.value_overrides.items():
        if not space.has_dimension(dim):
            raise InvalidInputError(f"value override names unknown dimension {dim!r}")
        values[dim] = _validated_value(space.dimension(dim), value)
    instance = Instance(id=request.instance.id, values=values, label=request.instance.label)
    transient = ConceptualSpace(
        dimensions=space.dimensions,
        concepts=new_concepts,
        standardization=space.standardization,
        schema_version=space.schema_version,
    )
    return instance, transient


def whatif(request: WhatIfRequest, space: ConceptualSpace) -> WhatIfResult:
    """Re-classify under transient overrides; the base space is untouched."""
    before = classify(request.instance, space, request.delta)
    instance, transient = _apply_overrides(request, space)
    after = classify(instance, transient, request.delta)
    delta_scores = {c: after.scores.get(c, 0.0) - before.scores.get(c, 0.0) for c in sorted(before.scores)}
    return WhatIfResult(before=before, after=after, changed=after.winner != before.winner, delta_scores=delta_scores)


def report_to_doc(report: ExplanationReport) -> dict:
    return {
        "result": result_to_doc(report.result),
        "rationale": report.rationale,
        "top_factors": [dict(f) for f in report.top_factors],
        "exemplar": {c: {k: v for k, v in sorted(report.exemplar[c].items())} for c in sorted(report.exemplar)},
        "chart_data": report.chart_data,
    }


def whatif_result_to_doc(result: WhatIfResult) -> dict:
    return {
        "before": result_to_doc(result.before),
        "after": result_to_doc(result.after),
        "changed": result.changed,
        "delta_scores": {c: result.delta_scores[c] for c in sorted(result.delta_scores)},
    }

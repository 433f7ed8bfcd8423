"""Model-file serialization and canonical JSON.

The model file is a versioned JSON document mirroring ConceptualSpace field
for field. Serialization is fully deterministic (sorted object keys,
shortest round-trip float repr), so train -> save -> load -> save is
byte-identical and results can be golden-file tested.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .errors import InvalidModelError
from .model import (
    GAUSSIAN,
    NOMINAL_TABLE,
    SCHEMA_VERSION,
    Concept,
    ConceptualSpace,
    DimensionSpec,
    MembershipFunction,
)


def canonical_json(obj: Any, pretty: bool = False) -> str:
    """Serialize with sorted keys; compact for wire use, indented for files."""
    if pretty:
        return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2, allow_nan=False)
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def sha256_of(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def dimension_to_doc(spec: DimensionSpec) -> dict:
    doc: dict[str, Any] = {"id": spec.id, "domain": spec.domain, "kind": spec.kind}
    if spec.unit is not None:
        doc["unit"] = spec.unit
    if spec.range is not None:
        doc["range"] = [spec.range[0], spec.range[1]]
    if spec.categories is not None:
        doc["categories"] = list(spec.categories)
    return doc


def dimension_from_doc(doc: dict) -> DimensionSpec:
    return DimensionSpec(
        id=doc["id"],
        domain=doc["domain"],
        kind=doc["kind"],
        unit=doc.get("unit"),
        range=tuple(doc["range"]) if "range" in doc else None,
        categories=tuple(doc["categories"]) if "categories" in doc else None,
    )


def membership_to_doc(mf: MembershipFunction) -> dict:
    if mf.kind == GAUSSIAN:
        return {"kind": GAUSSIAN, "center": mf.center, "width": mf.width, "floor": mf.floor}
    # Tables are emitted as sorted [value, membership] pairs so non-string
    # category values (binary 0/1) survive the JSON round trip.
    table = sorted((mf.table or {}).items(), key=lambda kv: kv[0])
    return {"kind": NOMINAL_TABLE, "table": [[v, mu] for v, mu in table], "floor": mf.floor}


def membership_from_doc(doc: dict) -> MembershipFunction:
    kind = doc.get("kind")
    if kind == GAUSSIAN:
        return MembershipFunction.gaussian(doc["center"], doc["width"], doc.get("floor", 1e-6))
    if kind == NOMINAL_TABLE:
        return MembershipFunction.nominal_table({v: mu for v, mu in doc["table"]}, doc.get("floor", 1e-6))
    raise InvalidModelError(f"unknown membership kind {kind!r}")


def concept_to_doc(concept: Concept) -> dict:
    return {
        "prototype": {d: concept.prototype[d] for d in sorted(concept.prototype, key=str)},
        "memberships": {d: membership_to_doc(concept.memberships[d]) for d in sorted(concept.memberships, key=str)},
        "weights": {d: concept.weights[d] for d in sorted(concept.weights, key=str)},
        "support": concept.support,
    }


def concept_from_doc(cid: str, doc: dict) -> Concept:
    return Concept(
        id=cid,
        prototype=dict(doc["prototype"]),
        memberships={d: membership_from_doc(m) for d, m in doc["memberships"].items()},
        weights=dict(doc["weights"]),
        support=int(doc["support"]),
    )


def space_to_doc(space: ConceptualSpace) -> dict:
    return {
        "schema_version": space.schema_version,
        "dimensions": [dimension_to_doc(d) for d in space.dimensions],
        "standardization": {d: [lo, hi] for d, (lo, hi) in sorted(space.standardization.items())},
        "concepts": {cid: concept_to_doc(space.concepts[cid]) for cid in sorted(space.concepts)},
    }


def space_from_doc(doc: dict) -> ConceptualSpace:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InvalidModelError(f"unsupported model schema_version {version!r}, expected {SCHEMA_VERSION!r}")
    try:
        dimensions = tuple(dimension_from_doc(d) for d in doc["dimensions"])
        concepts = {cid: concept_from_doc(cid, c) for cid, c in doc["concepts"].items()}
        standardization = {d: (lo, hi) for d, (lo, hi) in doc["standardization"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidModelError(f"malformed model document: {exc}") from exc
    return ConceptualSpace(dimensions=dimensions, concepts=concepts, standardization=standardization, schema_version=version)


def save_space(space: ConceptualSpace, path: str | Path) -> None:
    Path(path).write_text(canonical_json(space_to_doc(space), pretty=True) + "\n", encoding="utf-8")


def load_space(path: str | Path) -> ConceptualSpace:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidModelError(f"model file {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise InvalidModelError(f"model file {path} is not valid JSON: {exc}") from exc
    return space_from_doc(doc)


def model_hash(space: ConceptualSpace) -> str:
    """Stable content hash of the serialized model document."""
    return sha256_of(canonical_json(space_to_doc(space)))

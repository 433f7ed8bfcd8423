"""Learn a conceptual space from labelled instances.

Prototypes are centroids (mean for continuous dimensions, mode for nominal
ones). Membership functions are estimated frequentistically: a Gaussian with
the prototype at its peak for continuous dimensions, a relative-frequency
table for nominal ones. Weights follow the inverse-variability hypothesis:
the more the property varies within a category, the less it weighs.

All statistics run over exact sums (math.fsum), so training is permutation
invariant and bit-for-bit reproducible.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import InsufficientDataError, InvalidInputError
from .model import (
    MEMBERSHIP_FLOOR,
    SIGMA_MAX,
    W_MIN,
    WIDTH_MIN,
    Concept,
    ConceptualSpace,
    DimensionSpec,
    Instance,
    MembershipFunction,
    standardize,
)
from .serialization import canonical_json, dimension_from_doc, dimension_to_doc


@dataclass(frozen=True)
class Dataset:
    """Labelled training instances plus their dimension schema."""

    dimensions: tuple[DimensionSpec, ...]
    instances: tuple[Instance, ...]


@dataclass(frozen=True)
class TrainingConfig:
    min_support: int = 2
    w_min: float = W_MIN
    width_min: float = WIDTH_MIN
    sigma_max: float = SIGMA_MAX
    membership_floor: float = MEMBERSHIP_FLOOR


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def _pop_std(values: Sequence[float]) -> float:
    # Constant samples must report exactly 0, not rounding dust from the mean.
    if min(values) == max(values):
        return 0.0
    m = _mean(values)
    return math.sqrt(math.fsum((v - m) ** 2 for v in values) / len(values))


def _mode(values: Iterable[Any]) -> Any:
    counts = Counter(values)
    best = max(counts.values())
    # Ties break on category order, so training is deterministic.
    return min(v for v, n in counts.items() if n == best)


def _require_instances(instances: Sequence[Instance], spec: DimensionSpec) -> list[Any]:
    if not instances:
        raise InsufficientDataError(f"no instances to estimate dimension {spec.id!r}")
    values = []
    for inst in instances:
        if spec.id not in inst.values:
            raise InvalidInputError(f"instance {inst.id!r} missing value for dimension {spec.id!r}")
        values.append(inst.values[spec.id])
    return values


def learn_prototype(instances: Sequence[Instance], spec: DimensionSpec) -> Any:
    """Centroid of the labelled instances on one dimension."""
    values = _require_instances(instances, spec)
    if spec.is_continuous:
        return _mean([float(v) for v in values])
    return _mode(values)


def estimate_membership(
    instances: Sequence[Instance],
    spec: DimensionSpec,
    bounds: tuple[float, float] | None = None,
    config: TrainingConfig = TrainingConfig(),
) -> MembershipFunction:
    """Frequentist membership estimate with the prototype at its peak.

    Continuous dimensions need the global standardization ``bounds``; the
    Gaussian is centered on the standardized mean with the standardized
    population std as width (floored so constant dimensions stay usable).
    """
    values = _require_instances(instances, spec)
    if spec.is_continuous:
        if bounds is None:
            raise InvalidInputError(f"standardization bounds required for continuous dimension {spec.id!r}")
        zs = [standardize(float(v), spec, bounds) for v in values]
        width = max(_pop_std(zs), config.width_min)
        return MembershipFunction.gaussian(center=_mean(zs), width=width, floor=config.membership_floor)
    counts = Counter(values)
    for v in counts:
        if spec.categories is not None and v not in spec.categories:
            raise InvalidInputError(f"value {v!r} not among categories of dimension {spec.id!r}")
    mode_count = max(counts.values())
    table = {}
    for cat in spec.categories or sorted(counts):
        table[cat] = max(counts.get(cat, 0) / mode_count, config.membership_floor)
    return MembershipFunction.nominal_table(table, floor=config.membership_floor)


def estimate_weight(
    instances: Sequence[Instance],
    spec: DimensionSpec,
    bounds: tuple[float, float] | None = None,
    config: TrainingConfig = TrainingConfig(),
) -> float:
    """Inverse-variability weight in [w_min, 1].

    Continuous: 1 - std/sigma_max over standardized values. Nominal:
    1 - H/H_max with H the Shannon entropy of the observed categories and
    H_max = log(category count). Zero variability yields exactly 1.
    """
    values = _require_instances(instances, spec)
    if spec.is_continuous:
        if bounds is None:
            raise InvalidInputError(f"standardization bounds required for continuous dimension {spec.id!r}")
        sigma = _pop_std([standardize(float(v), spec, bounds) for v in values])
        raw = 1.0 - sigma / config.sigma_max
    else:
        counts = Counter(values)
        n = len(values)
        h = -math.fsum((c / n) * math.log(c / n) for c in counts.values())
        h_max = math.log(len(spec.categories)) if spec.categories and len(spec.categories) > 1 else 0.0
        raw = 1.0 if h_max == 0.0 else 1.0 - h / h_max
    return min(1.0, max(config.w_min, raw))


def _standardization_bounds(dataset: Dataset) -> dict[str, tuple[float, float]]:
    bounds: dict[str, tuple[float, float]] = {}
    for spec in dataset.dimensions:
        if not spec.is_continuous:
            continue
        observed = [float(inst.values[spec.id]) for inst in dataset.instances if spec.id in inst.values]
        if not observed:
            raise InsufficientDataError(f"no values observed for dimension {spec.id!r}")
        lo, hi = min(observed), max(observed)
        if lo == hi:
            # Constant across the whole dataset: fall back to the declared range.
            if spec.range is None:
                raise InvalidInputError(f"dimension {spec.id!r} is constant and declares no range")
            lo, hi = spec.range
        bounds[spec.id] = (lo, hi)
    return bounds


def train(dataset: Dataset, config: TrainingConfig = TrainingConfig()) -> ConceptualSpace:
    """Learn one concept per distinct label; the result validates cleanly."""
    if not dataset.instances:
        raise InsufficientDataError("dataset holds no instances")
    for inst in dataset.instances:
        if not inst.label:
            raise InvalidInputError(f"instance {inst.id!r} carries no label")
        for spec in dataset.dimensions:
            if spec.id not in inst.values:
                raise InvalidInputError(f"instance {inst.id!r} missing value for dimension {spec.id!r}")
    by_label: dict[str, list[Instance]] = {}
    for inst in dataset.instances:
        by_label.setdefault(inst.label, []).append(inst)
    for label in sorted(by_label):
        if len(by_label[label]) < config.min_support:
            raise InsufficientDataError(
                f"label {label!r} has {len(by_label[label])} instances, need at least {config.min_support}"
            )
    standardization = _standardization_bounds(dataset)
    concepts: dict[str, Concept] = {}
    for label in sorted(by_label):
        members = by_label[label]
        prototype: dict[str, Any] = {}
        memberships: dict[str, MembershipFunction] = {}
        weights: dict[str, float] = {}
        for spec in dataset.dimensions:
            b = standardization.get(spec.id)
            prototype[spec.id] = learn_prototype(members, spec)
            memberships[spec.id] = estimate_membership(members, spec, b, config)
            weights[spec.id] = estimate_weight(members, spec, b, config)
        concepts[label] = Concept(id=label, prototype=prototype, memberships=memberships, weights=weights, support=len(members))
    return ConceptualSpace(dimensions=dataset.dimensions, concepts=concepts, standardization=standardization)


# ---------------------------------------------------------------------------
# Dataset files: JSON with "dimensions" and "instances" arrays; CSV ingestion
# with a sidecar dimension-schema JSON.


def instance_from_doc(doc: dict) -> Instance:
    return Instance(id=doc.get("id", "instance"), values=dict(doc["values"]), label=doc.get("label"))


def instance_to_doc(inst: Instance) -> dict:
    doc: dict[str, Any] = {"id": inst.id, "values": {k: inst.values[k] for k in sorted(inst.values)}}
    if inst.label is not None:
        doc["label"] = inst.label
    return doc


def dataset_to_doc(dataset: Dataset, header: dict | None = None) -> dict:
    doc: dict[str, Any] = {
        "dimensions": [dimension_to_doc(d) for d in dataset.dimensions],
        "instances": [instance_to_doc(i) for i in dataset.instances],
    }
    if header:
        doc["header"] = header
    return doc


def dataset_from_doc(doc: dict) -> Dataset:
    try:
        dims = tuple(dimension_from_doc(d) for d in doc["dimensions"])
        instances = tuple(instance_from_doc(i) for i in doc["instances"])
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed dataset document: {exc}") from exc
    return Dataset(dimensions=dims, instances=instances)


def save_dataset(dataset: Dataset, path: str | Path, header: dict | None = None) -> None:
    Path(path).write_text(canonical_json(dataset_to_doc(dataset, header), pretty=True) + "\n", encoding="utf-8")


def load_dataset(path: str | Path) -> Dataset:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"dataset file {path} is not valid JSON: {exc}") from exc
    return dataset_from_doc(doc)


def _parse_csv_value(raw: str, spec: DimensionSpec) -> Any:
    if spec.is_continuous:
        try:
            return float(raw)
        except ValueError as exc:
            raise InvalidInputError(f"column {spec.id!r}: {raw!r} is not a number") from exc
    if spec.kind == "binary":
        if raw not in ("0", "1"):
            raise InvalidInputError(f"column {spec.id!r}: {raw!r} is not 0/1")
        return int(raw)
    return raw


def load_dataset_csv(csv_path: str | Path, schema_path: str | Path) -> Dataset:
    """Rows of id,label,<dimension columns>; schema file lists the dimensions."""
    schema = json.loads(Path(schema_path).read_text(encoding="utf-8"))
    dims = tuple(dimension_from_doc(d) for d in schema["dimensions"])
    by_id = {d.id: d for d in dims}
    instances = []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            values = {}
            for col, raw in row.items():
                if col in ("id", "label") or col not in by_id:
                    continue
                values[col] = _parse_csv_value(raw, by_id[col])
            instances.append(Instance(id=row.get("id", f"row-{len(instances)}"), values=values, label=row.get("label")))
    return Dataset(dimensions=dims, instances=tuple(instances))

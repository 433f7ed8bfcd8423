"""Core data model for conceptual spaces.

A space is spanned by quality dimensions grouped into domains. Each concept
holds a prototype, one membership function per dimension, and one weight per
dimension. Instances are plain property-value vectors. All types are frozen
after construction; training and what-if probing build new objects instead of
mutating existing ones, so a space can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import InvalidInputError

SCHEMA_VERSION = "1"

# Membership values never reach exactly 0 so log-space diagnostics and
# counterfactual deltas stay finite; the ordering of classifications is
# unaffected at this magnitude.
MEMBERSHIP_FLOOR = 1e-6

# Weights are clamped away from 0 so a noisy dimension is de-emphasized,
# never silently deleted.
W_MIN = 0.05

# Minimal width (in standardized units) for learned Gaussians; keeps
# constant dimensions from collapsing to a zero-width spike.
WIDTH_MIN = 0.01

# Maximal population std of values confined to [0, 1]; normalizes the
# variability term of weight estimation.
SIGMA_MAX = 0.5

# Default margin below which a classification is flagged disputable.
DEFAULT_DELTA = 0.1

CONTINUOUS = "continuous"
NOMINAL = "nominal"
BINARY = "binary"

GAUSSIAN = "gaussian"
NOMINAL_TABLE = "nominal_table"


@dataclass(frozen=True)
class DimensionSpec:
    """Schema of one quality dimension inside a quality domain."""

    id: str
    domain: str
    kind: str
    unit: str | None = None
    range: tuple[float, float] | None = None
    categories: tuple[Any, ...] | None = None

    @property
    def is_continuous(self) -> bool:
        return self.kind == CONTINUOUS

    @property
    def is_utilisation(self) -> bool:
        return self.kind == BINARY or self.domain == "utilisation"


@dataclass(frozen=True)
class MembershipFunction:
    """Fuzzy membership of a property value for one concept dimension.

    Gaussian functions are parameterized in standardized units (their input
    is the min-max scaled value); nominal tables map category values to
    membership degrees with the modal category at 1.
    """

    kind: str
    center: float | None = None
    width: float | None = None
    table: Mapping[Any, float] | None = None
    floor: float = MEMBERSHIP_FLOOR

    @classmethod
    def gaussian(cls, center: float, width: float, floor: float = MEMBERSHIP_FLOOR) -> "MembershipFunction":
        return cls(kind=GAUSSIAN, center=center, width=width, floor=floor)

    @classmethod
    def nominal_table(cls, table: Mapping[Any, float], floor: float = MEMBERSHIP_FLOOR) -> "MembershipFunction":
        return cls(kind=NOMINAL_TABLE, table=dict(table), floor=floor)


@dataclass(frozen=True)
class Concept:
    """Prototype, membership functions, and weights for one category."""

    id: str
    prototype: Mapping[str, Any]
    memberships: Mapping[str, MembershipFunction]
    weights: Mapping[str, float]
    support: int

    def dimension_ids(self) -> list[str]:
        return sorted(self.weights)


@dataclass(frozen=True)
class Instance:
    """A property-value vector for one observed object."""

    id: str
    values: Mapping[str, Any]
    label: str | None = None


@dataclass(frozen=True)
class ConceptualSpace:
    """A trained space: dimensions, concepts, and standardization bounds."""

    dimensions: tuple[DimensionSpec, ...]
    concepts: Mapping[str, Concept]
    standardization: Mapping[str, tuple[float, float]]
    schema_version: str = SCHEMA_VERSION
    _by_id: dict[str, DimensionSpec] = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_id", {d.id: d for d in self.dimensions})

    def dimension(self, dim_id: str) -> DimensionSpec:
        try:
            return self._by_id[dim_id]
        except KeyError:
            raise InvalidInputError(f"unknown dimension {dim_id!r}") from None

    def has_dimension(self, dim_id: str) -> bool:
        return dim_id in self._by_id

    def concept_ids(self) -> list[str]:
        return sorted(self.concepts)


def standardize(value: float, spec: DimensionSpec, bounds: tuple[float, float]) -> float:
    """Min-max scale ``value`` to [0, 1], clamping outside the bounds.

    Only defined for continuous dimensions; classification-time values that
    fall outside the training bounds clamp to the nearest edge.
    """
    if not spec.is_continuous:
        raise InvalidInputError(f"dimension {spec.id!r} is not continuous")
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise InvalidInputError(f"invalid standardization bounds {bounds!r} for {spec.id!r}")
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise InvalidInputError(f"non-finite value {value!r} for dimension {spec.id!r}")
    z = (value - lo) / (hi - lo)
    return min(1.0, max(0.0, z))


@dataclass(frozen=True)
class Violation:
    """One broken invariant found by validate_space; data, not an error."""

    rule: str
    message: str
    concept: str | None = None
    dimension: str | None = None


def _check_dimension(spec: DimensionSpec) -> list[Violation]:
    out: list[Violation] = []
    if spec.kind not in (CONTINUOUS, NOMINAL, BINARY):
        out.append(Violation("kind-unknown", f"dimension {spec.id!r} has unknown kind {spec.kind!r}", dimension=spec.id))
        return out
    if spec.is_continuous:
        if spec.range is None or not (spec.range[0] < spec.range[1]):
            out.append(Violation("range-invalid", f"continuous dimension {spec.id!r} needs range [min, max] with min < max", dimension=spec.id))
    else:
        cats = spec.categories
        if not cats:
            out.append(Violation("categories-empty", f"nominal dimension {spec.id!r} has no categories", dimension=spec.id))
        elif len(set(cats)) != len(cats):
            out.append(Violation("categories-duplicate", f"dimension {spec.id!r} has duplicate categories", dimension=spec.id))
        if spec.kind == BINARY and cats is not None and set(cats) != {0, 1}:
            out.append(Violation("binary-categories", f"binary dimension {spec.id!r} must have categories exactly {{0, 1}}", dimension=spec.id))
    return out


def _check_membership(cid: str, dim: str, spec: DimensionSpec, mf: MembershipFunction) -> list[Violation]:
    out: list[Violation] = []
    if spec.is_continuous:
        if mf.kind != GAUSSIAN:
            out.append(Violation("membership-kind", f"concept {cid!r} dimension {dim!r}: continuous dimension needs a gaussian membership", cid, dim))
            return out
        if mf.width is None or not (mf.width > 0):
            out.append(Violation("width-positive", f"concept {cid!r} dimension {dim!r}: gaussian width must be > 0", cid, dim))
    else:
        if mf.kind != NOMINAL_TABLE:
            out.append(Violation("membership-kind", f"concept {cid!r} dimension {dim!r}: nominal dimension needs a table membership", cid, dim))
            return out
        table = mf.table or {}
        cats = set(spec.categories or ())
        for v, mu in table.items():
            if v not in cats:
                out.append(Violation("table-key", f"concept {cid!r} dimension {dim!r}: table value {v!r} not among categories", cid, dim))
            if not (mf.floor <= mu <= 1.0):
                out.append(Violation("table-range", f"concept {cid!r} dimension {dim!r}: membership {mu!r} outside [floor, 1]", cid, dim))
        if not table or abs(max(table.values()) - 1.0) > 1e-12:
            out.append(Violation("table-mode", f"concept {cid!r} dimension {dim!r}: table must map the modal category to 1", cid, dim))
    return out


def validate_space(space: ConceptualSpace) -> list[Violation]:
    """Check every structural invariant; an empty report means every
    classifier operation is defined for instances within the dimension set."""
    out: list[Violation] = []
    if not space.concepts:
        out.append(Violation("no-concepts", "space holds no concepts"))
    dim_ids = {d.id for d in space.dimensions}
    for spec in space.dimensions:
        out.extend(_check_dimension(spec))
    for spec in space.dimensions:
        if spec.is_continuous:
            bounds = space.standardization.get(spec.id)
            if bounds is None:
                out.append(Violation("standardization-missing", f"no standardization bounds for continuous dimension {spec.id!r}", dimension=spec.id))
            elif not (bounds[0] < bounds[1]):
                out.append(Violation("standardization-range", f"degenerate standardization bounds for {spec.id!r}", dimension=spec.id))
    for cid in sorted(space.concepts):
        concept = space.concepts[cid]
        if concept.id != cid:
            out.append(Violation("concept-id", f"concept keyed {cid!r} carries id {concept.id!r}", cid))
        keysets = {"prototype": set(concept.prototype), "memberships": set(concept.memberships), "weights": set(concept.weights)}
        union = set().union(*keysets.values())
        for name, keys in keysets.items():
            for missing in sorted(union - keys, key=str):
                out.append(Violation("key-mismatch", f"concept {cid!r}: {name} missing dimension {missing!r}", cid, str(missing)))
        if concept.support < 1:
            out.append(Violation("support", f"concept {cid!r} has support {concept.support} < 1", cid))
        for dim in sorted(concept.weights):
            if dim not in dim_ids:
                out.append(Violation("unknown-dimension", f"concept {cid!r} uses dimension {dim!r} not in the space", cid, dim))
                continue
            w = concept.weights[dim]
            if not (W_MIN <= w <= 1.0):
                out.append(Violation("weight-range", f"concept {cid!r} dimension {dim!r}: weight {w!r} outside [{W_MIN}, 1]", cid, dim))
            mf = concept.memberships.get(dim)
            if mf is not None:
                out.extend(_check_membership(cid, dim, space.dimension(dim), mf))
    return out

"""Synthetic scene generation: labelled datasets with ground-truth physical
and utilisation properties.

Generation is driven by per-class value generators (constant, gaussian, or
categorical) over a declared dimension schema. A fixed seed reproduces the
dataset byte for byte; the emitted file header records the seed, the RNG
algorithm identifier, and a hash of the generating config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import InvalidInputError, NotFoundError
from .learning import Dataset, save_dataset
from .model import BINARY, CONTINUOUS, NOMINAL, DimensionSpec, Instance
from .serialization import canonical_json, sha256_of

GENERATOR_ID = "numpy-pcg64"


@dataclass(frozen=True)
class ClassConfig:
    """One labelled object class: generators per dimension plus an optional
    utilisation map (binary dimension values taken from a grounding)."""

    concept_id: str
    count: int
    generators: Mapping[str, dict]
    utilisation: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class SceneConfig:
    seed: int
    dimensions: tuple[DimensionSpec, ...]
    classes: tuple[ClassConfig, ...]


def _validate_generator(dim: DimensionSpec, gen: dict) -> None:
    kind = gen.get("kind")
    if kind == "constant":
        if "value" not in gen:
            raise InvalidInputError(f"constant generator for {dim.id!r} needs a value")
    elif kind == "gaussian":
        if dim.kind != CONTINUOUS:
            raise InvalidInputError(f"gaussian generator on non-continuous dimension {dim.id!r}")
        if not (gen.get("std", -1.0) >= 0.0):
            raise InvalidInputError(f"gaussian generator for {dim.id!r} needs std >= 0")
    elif kind == "categorical":
        if dim.kind not in (NOMINAL, BINARY):
            raise InvalidInputError(f"categorical generator on continuous dimension {dim.id!r}")
        probs = gen.get("probs") or {}
        if abs(math.fsum(probs.values()) - 1.0) > 1e-9:
            raise InvalidInputError(f"categorical probabilities for {dim.id!r} must sum to 1")
        for cat in probs:
            if dim.categories is not None and cat not in dim.categories:
                raise InvalidInputError(f"categorical generator for {dim.id!r} names unknown category {cat!r}")
    else:
        raise InvalidInputError(f"unknown generator kind {kind!r} for dimension {dim.id!r}")


def validate_config(config: SceneConfig) -> None:
    by_id = {d.id: d for d in config.dimensions}
    for cls in config.classes:
        if cls.count < 1:
            raise InvalidInputError(f"class {cls.concept_id!r} needs count >= 1")
        for dim in config.dimensions:
            if dim.id in cls.utilisation:
                if cls.utilisation[dim.id] not in (0, 1):
                    raise InvalidInputError(f"utilisation value for {dim.id!r} must be 0 or 1")
                continue
            if dim.id not in cls.generators:
                raise InvalidInputError(f"class {cls.concept_id!r} has no generator for dimension {dim.id!r}")
        for dim_id, gen in cls.generators.items():
            if dim_id not in by_id:
                raise InvalidInputError(f"generator names unknown dimension {dim_id!r}")
            _validate_generator(by_id[dim_id], gen)


def _draw(rng: np.random.Generator, dim: DimensionSpec, gen: dict) -> Any:
    kind = gen["kind"]
    if kind == "constant":
        return gen["value"]
    if kind == "gaussian":
        mean, std = float(gen["mean"]), float(gen["std"])
        value = mean + std * float(rng.standard_normal())
        # Truncate to +-3 std, then clamp to the declared range.
        value = min(mean + 3 * std, max(mean - 3 * std, value))
        if dim.range is not None:
            value = min(dim.range[1], max(dim.range[0], value))
        return value
    # categorical: walk the cumulative distribution in sorted-category order.
    u = float(rng.random())
    acc = 0.0
    cats = sorted(gen["probs"], key=str)
    for cat in cats:
        acc += gen["probs"][cat]
        if u < acc:
            return cat
    return cats[-1]


def config_hash(config: SceneConfig) -> str:
    return sha256_of(canonical_json(config_to_doc(config)))


def generate(config: SceneConfig) -> Dataset:
    """Deterministically sample a fully labelled dataset from the config."""
    validate_config(config)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    instances = []
    for cls in config.classes:
        for i in range(cls.count):
            values: dict[str, Any] = {}
            for dim in config.dimensions:
                if dim.id in cls.utilisation:
                    values[dim.id] = int(cls.utilisation[dim.id])
                else:
                    values[dim.id] = _draw(rng, dim, cls.generators[dim.id])
            instances.append(Instance(id=f"{cls.concept_id}-{i:03d}", values=values, label=cls.concept_id))
    return Dataset(dimensions=config.dimensions, instances=tuple(instances))


def dataset_header(config: SceneConfig) -> dict:
    return {"seed": config.seed, "generator": GENERATOR_ID, "config_hash": config_hash(config)}


def generate_to_file(config: SceneConfig, path: str | Path) -> Dataset:
    dataset = generate(config)
    save_dataset(dataset, path, header=dataset_header(config))
    return dataset


def config_to_doc(config: SceneConfig) -> dict:
    from .serialization import dimension_to_doc

    return {
        "seed": config.seed,
        "dimensions": [dimension_to_doc(d) for d in config.dimensions],
        "classes": [
            {
                "concept": c.concept_id,
                "count": c.count,
                "generators": {d: dict(g) for d, g in sorted(c.generators.items())},
                "utilisation": {d: v for d, v in sorted(c.utilisation.items())},
            }
            for c in config.classes
        ],
    }


def config_from_doc(doc: dict) -> SceneConfig:
    from .serialization import dimension_from_doc

    try:
        dims = tuple(dimension_from_doc(d) for d in doc["dimensions"])
        classes = tuple(
            ClassConfig(
                concept_id=c["concept"],
                count=int(c["count"]),
                generators={d: dict(g) for d, g in c.get("generators", {}).items()},
                utilisation={d: int(v) for d, v in c.get("utilisation", {}).items()},
            )
            for c in doc["classes"]
        )
        return SceneConfig(seed=int(doc["seed"]), dimensions=dims, classes=classes)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed scene config: {exc}") from exc


# ---------------------------------------------------------------------------
# Built-in fixtures used by the test corpus and the demo service.

_PHYSICAL_TOOL_DIMS = (
    DimensionSpec(id="size_m", domain="size", kind=CONTINUOUS, unit="m", range=(0.05, 4.0)),
    DimensionSpec(id="mass_kg", domain="mass", kind=CONTINUOUS, unit="kg", range=(0.05, 6000.0)),
    # Hue is treated as a linear dimension; wrap-around distance at 0/360 is
    # a known limitation of these fixtures.
    DimensionSpec(id="hue_deg", domain="colour", kind=CONTINUOUS, unit="deg", range=(0.0, 360.0)),
    DimensionSpec(id="shape", domain="shape", kind=NOMINAL, categories=("boxy", "claw", "cylindrical", "pistol_grip", "vehicle")),
)


def _utilisation_dims(verbs: Sequence[str]) -> tuple[DimensionSpec, ...]:
    return tuple(
        DimensionSpec(id=f"utilisation:{v}", domain="utilisation", kind=BINARY, categories=(0, 1)) for v in verbs
    )


def _idealised_config() -> SceneConfig:
    dims = (
        DimensionSpec(id="hue_deg", domain="colour", kind=CONTINUOUS, unit="deg", range=(0.0, 360.0)),
        DimensionSpec(id="shape", domain="shape", kind=NOMINAL, categories=("cube", "sphere")),
    )
    return SceneConfig(
        seed=10101,
        dimensions=dims,
        classes=(
            ClassConfig(
                concept_id="Green Ball",
                count=5,
                generators={"hue_deg": {"kind": "constant", "value": 120.0}, "shape": {"kind": "constant", "value": "sphere"}},
            ),
            ClassConfig(
                concept_id="Red Cube",
                count=5,
                generators={"hue_deg": {"kind": "constant", "value": 0.0}, "shape": {"kind": "constant", "value": "cube"}},
            ),
        ),
    )


def _drill_riveter_config() -> SceneConfig:
    dims = _PHYSICAL_TOOL_DIMS + _utilisation_dims(("drill", "rivet"))
    shared_shape = {"kind": "categorical", "probs": {"pistol_grip": 0.9, "boxy": 0.1}}
    return SceneConfig(
        seed=20230917,
        dimensions=dims,
        classes=(
            ClassConfig(
                concept_id="drill",
                count=40,
                generators={
                    "size_m": {"kind": "gaussian", "mean": 0.25, "std": 0.02},
                    "mass_kg": {"kind": "gaussian", "mean": 1.5, "std": 0.1},
                    "hue_deg": {"kind": "gaussian", "mean": 200.0, "std": 55.0},
                    "shape": shared_shape,
                },
                utilisation={"utilisation:drill": 1, "utilisation:rivet": 0},
            ),
            ClassConfig(
                concept_id="riveter",
                count=40,
                generators={
                    "size_m": {"kind": "gaussian", "mean": 0.27, "std": 0.02},
                    "mass_kg": {"kind": "gaussian", "mean": 1.6, "std": 0.1},
                    "hue_deg": {"kind": "gaussian", "mean": 210.0, "std": 55.0},
                    "shape": {"kind": "categorical", "probs": {"pistol_grip": 0.85, "boxy": 0.15}},
                },
                utilisation={"utilisation:drill": 0, "utilisation:rivet": 1},
            ),
        ),
    )


def _four_artefacts_config() -> SceneConfig:
    dims = _PHYSICAL_TOOL_DIMS + _utilisation_dims(("drill", "hammer", "lift", "rivet"))

    def tool(concept: str, size: float, mass: float, hue: float, shape_probs: dict, used_for: str) -> ClassConfig:
        utilisation = {f"utilisation:{v}": (1 if v == used_for else 0) for v in ("drill", "hammer", "lift", "rivet")}
        return ClassConfig(
            concept_id=concept,
            count=30,
            generators={
                "size_m": {"kind": "gaussian", "mean": size, "std": size * 0.08},
                "mass_kg": {"kind": "gaussian", "mean": mass, "std": mass * 0.1},
                "hue_deg": {"kind": "gaussian", "mean": hue, "std": 50.0},
                "shape": {"kind": "categorical", "probs": shape_probs},
            },
            utilisation=utilisation,
        )

    return SceneConfig(
        seed=20230918,
        dimensions=dims,
        classes=(
            tool("drill", 0.25, 1.5, 200.0, {"pistol_grip": 0.9, "boxy": 0.1}, "drill"),
            tool("forklift", 2.5, 3500.0, 45.0, {"vehicle": 1.0}, "lift"),
            tool("hammer", 0.33, 0.6, 30.0, {"claw": 0.8, "cylindrical": 0.2}, "hammer"),
            tool("riveter", 0.27, 1.7, 210.0, {"pistol_grip": 0.85, "boxy": 0.15}, "rivet"),
        ),
    )


def builtin_fixtures() -> dict[str, SceneConfig]:
    return {
        "idealised": _idealised_config(),
        "drill-riveter": _drill_riveter_config(),
        "four-artefacts": _four_artefacts_config(),
    }


def builtin_fixture(name: str) -> SceneConfig:
    fixtures = builtin_fixtures()
    if name not in fixtures:
        raise NotFoundError(f"unknown scene fixture {name!r}; available: {', '.join(sorted(fixtures))}")
    return fixtures[name]

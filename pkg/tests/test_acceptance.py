"""Acceptance suite: one test per shipping criterion.

Each test prints a PASS line (run with -s to see them all); tolerances are
pinned here and nowhere else. The equation oracle below is an independent
re-implementation of the scoring math over plain dicts, kept deliberately
separate from the library code paths it checks.
"""

import json
import math
import random
import time

import pytest

from conceptspace.classifier import classify, representativeness, typicality, voronoi_assign
from conceptspace.explain import explain
from conceptspace.knowledge import ground_utilisation, softmax_grounding
from conceptspace.knowledge.fixture import load_builtin_fixture
from conceptspace.knowledge.pipeline import group_phrases
from conceptspace.learning import estimate_weight, train
from conceptspace.model import (
    Concept,
    ConceptualSpace,
    DimensionSpec,
    Instance,
    MembershipFunction,
)
from conceptspace.scenegen import builtin_fixture, generate, generate_to_file
from conceptspace.serialization import load_space, save_space


def report(name):
    print(f"ACCEPTANCE {name}: PASS")


# ---------------------------------------------------------------------------
# Independent oracle: scoring math re-coded over plain dicts.


def oracle_mu(mf, value):
    floor = 1e-6
    if mf["kind"] == "gaussian":
        z = min(1.0, max(0.0, float(value)))  # identity standardization over [0, 1]
        d = z - mf["center"]
        return max(math.exp(-(d * d) / (2.0 * mf["width"] * mf["width"])), floor)
    return max(mf["table"].get(value, floor), floor)


def oracle_scores(space_doc, values):
    scores = {}
    for cid, concept in space_doc.items():
        dims = sorted(set(values) & set(concept["weights"]))
        if not dims:
            scores[cid] = 0.0
            continue
        total = sum(concept["weights"][d] for d in dims)
        acc = 0.0
        for d in dims:
            mu = oracle_mu(concept["memberships"][d], values[d])
            acc += (concept["weights"][d] / total) * mu * mu
        scores[cid] = math.sqrt(acc)
    return scores


def oracle_winner(scores):
    return sorted(scores, key=lambda c: (-scores[c], c))[0]


def random_space_doc(rng, n_concepts, dim_specs):
    doc = {}
    for k in range(n_concepts):
        cid = f"c{k}"
        weights, memberships = {}, {}
        for spec in dim_specs:
            weights[spec.id] = rng.uniform(0.05, 1.0)
            if spec.is_continuous:
                memberships[spec.id] = {
                    "kind": "gaussian",
                    "center": rng.uniform(0.0, 1.0),
                    "width": rng.uniform(0.01, 0.5),
                }
            else:
                cats = list(spec.categories)
                mode = rng.choice(cats)
                table = {c: (1.0 if c == mode else rng.uniform(1e-6, 1.0)) for c in cats}
                memberships[spec.id] = {"kind": "nominal_table", "table": table, "mode": mode}
        doc[cid] = {"weights": weights, "memberships": memberships}
    return doc


def space_from_oracle_doc(doc, dim_specs):
    concepts = {}
    for cid, c in doc.items():
        memberships = {}
        prototype = {}
        for spec in dim_specs:
            mf = c["memberships"][spec.id]
            if mf["kind"] == "gaussian":
                memberships[spec.id] = MembershipFunction.gaussian(mf["center"], mf["width"])
                prototype[spec.id] = mf["center"]
            else:
                memberships[spec.id] = MembershipFunction.nominal_table(mf["table"])
                prototype[spec.id] = mf["mode"]
        concepts[cid] = Concept(
            id=cid, prototype=prototype, memberships=memberships, weights=dict(c["weights"]), support=2
        )
    standardization = {s.id: (0.0, 1.0) for s in dim_specs if s.is_continuous}
    return ConceptualSpace(dimensions=tuple(dim_specs), concepts=concepts, standardization=standardization)


def random_dim_specs(rng, n_dims):
    specs = []
    for i in range(n_dims):
        if rng.random() < 0.6:
            specs.append(DimensionSpec(id=f"d{i}", domain="dom", kind="continuous", unit="", range=(0.0, 1.0)))
        else:
            specs.append(DimensionSpec(id=f"d{i}", domain="dom", kind="nominal", categories=("p", "q", "r")))
    return tuple(specs)


def random_instance(rng, dim_specs, allow_missing=True):
    values = {}
    for spec in dim_specs:
        if allow_missing and rng.random() < 0.2 and len(dim_specs) > 1:
            continue
        if spec.is_continuous:
            values[spec.id] = rng.uniform(-0.2, 1.2)  # exercises clamping
        else:
            values[spec.id] = rng.choice(list(spec.categories) + ["unseen"])
    if not values:
        spec = dim_specs[0]
        values[spec.id] = 0.5 if spec.is_continuous else spec.categories[0]
    return values


# ---------------------------------------------------------------------------
# Criteria


def drill_riveter_probe(space):
    values = {
        d: v for d, v in space.concepts["drill"].prototype.items() if not d.startswith("utilisation:")
    }
    values["utilisation:drill"] = 0
    values["utilisation:rivet"] = 1
    return Instance(id="probe", values=values)


def test_drill_riveter_scenario():
    started = time.perf_counter()
    space = train(generate(builtin_fixture("drill-riveter")))
    probe = drill_riveter_probe(space)

    # Physically nearest the drill prototype (utilisation dims aside).
    def physical_distance(cid):
        acc = 0.0
        for spec in space.dimensions:
            if spec.id.startswith("utilisation:") or not spec.is_continuous:
                continue
            lo, hi = space.standardization[spec.id]
            zp = (probe.values[spec.id] - lo) / (hi - lo)
            zc = (space.concepts[cid].prototype[spec.id] - lo) / (hi - lo)
            acc += (zp - zc) ** 2
        return acc

    assert physical_distance("drill") < physical_distance("riveter")
    result = classify(probe, space)
    assert result.winner == "riveter"
    report_obj = explain(probe, space)
    assert report_obj.top_factors[0]["dimension"].startswith("utilisation:")
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"scenario took {elapsed:.3f}s"
    report("drill-riveter scenario")


def test_equation_oracle():
    started = time.perf_counter()
    rng = random.Random(42)
    for _ in range(200):
        dim_specs = random_dim_specs(rng, rng.randint(1, 5))
        doc = random_space_doc(rng, rng.randint(1, 4), dim_specs)
        space = space_from_oracle_doc(doc, dim_specs)
        values = random_instance(rng, dim_specs)
        expected = oracle_scores(doc, values)
        result = classify(Instance(id="q", values=values), space)
        assert result.winner == oracle_winner(expected)
        for cid, score in expected.items():
            assert abs(result.scores[cid] - score) <= 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"oracle sweep took {elapsed:.3f}s"
    report("equation oracle (200 random spaces)")


def test_norm_identity():
    rng = random.Random(7)
    checked_perfect = 0
    for case in range(1000):
        dim_specs = random_dim_specs(rng, rng.randint(1, 5))
        doc = random_space_doc(rng, rng.randint(1, 3), dim_specs)
        space = space_from_oracle_doc(doc, dim_specs)
        if case % 10 == 0:
            # Instance exactly at a concept's peak: every membership is 1.
            cid = rng.choice(sorted(space.concepts))
            values = dict(space.concepts[cid].prototype)
        else:
            values = random_instance(rng, dim_specs)
        instance = Instance(id="q", values=values)
        for cid, concept in space.concepts.items():
            vec = representativeness(instance, concept, space)
            score = typicality(instance, concept, space)
            assert abs(score - vec.norm) <= 1e-12
            assert 0.0 <= score <= 1.0
            mus = {
                d: oracle_mu(doc[cid]["memberships"][d], values[d])
                for d in set(values) & set(concept.weights)
            }
            if all(m == 1.0 for m in mus.values()):
                assert score == 1.0
                checked_perfect += 1
            else:
                assert score < 1.0
    assert checked_perfect >= 50
    report("norm identity (1000 random cases)")


def test_weight_learning_monotonicity():
    spec = DimensionSpec(id="x", domain="size", kind="continuous", unit="", range=(0.0, 10.0))
    bounds = (0.0, 10.0)

    def weight_for(values):
        instances = [Instance(id=f"i{k}", values={"x": v}, label="c") for k, v in enumerate(values)]
        return estimate_weight(instances, spec, bounds)

    nested = [5.0, 5.0]
    weights = [weight_for(nested)]
    for offset in (0.5, 1.0, 2.0, 3.0, 4.0, 5.0):
        nested = nested + [5.0 - offset, 5.0 + offset]
        weights.append(weight_for(nested))
    assert weights[0] == 1.0  # zero variance is exactly maximal
    assert all(weights[i + 1] <= weights[i] for i in range(len(weights) - 1))

    nominal = DimensionSpec(id="c", domain="kind", kind="nominal", categories=("p", "q"))

    def nominal_weight(counts):
        values = ["p"] * counts[0] + ["q"] * counts[1]
        instances = [Instance(id=f"i{k}", values={"c": v}, label="c") for k, v in enumerate(values)]
        return estimate_weight(instances, nominal)

    ws = [nominal_weight(c) for c in ((10, 0), (9, 1), (7, 3), (5, 5))]
    assert ws[0] == 1.0
    assert all(ws[i + 1] <= ws[i] for i in range(len(ws) - 1))
    report("weight-learning monotonicity")


def test_softmax_grounding_magnitude():
    fixture = load_builtin_fixture()
    drill_edges = [e for e in fixture.edges if e.start == "drill" and e.relation == "UsedFor"]
    groups = group_phrases(drill_edges, fixture)
    assert sorted(groups.values(), reverse=True) == [16.0, 1.0]
    mu = softmax_grounding(groups)
    dominant = max(mu.values())
    assert abs(dominant - 0.9999997) <= 5e-7
    assert math.fsum(mu.values()) == pytest.approx(1.0, abs=1e-9)
    report("softmax grounding magnitude")


def test_knowledge_pipeline_golden():
    fixture = load_builtin_fixture()
    expected = {
        "drill": ("wordnet_edge", "drill"),
        "hammer": ("wordnet_edge", "hammer"),
        "forklift": ("crowd_edge", "lift"),
        "riveter": ("stem_fallback", "rivet"),
    }
    for label, (provenance, hot_dim) in expected.items():
        g = ground_utilisation(label, fixture=fixture)
        assert g.provenance == provenance, f"{label}: {g.provenance}"
        assert g.dims == {d: (1 if d == hot_dim else 0) for d in ("drill", "hammer", "lift", "rivet")}
    # Crowd edges at weight <= 1.0 contribute nothing.
    forklift = ground_utilisation("forklift", fixture=fixture)
    assert "move" not in forklift.softmax and "move" not in forklift.evidence["lift"]["verbs"]
    # verb.cognition senses are excluded from grounding.
    hammer = ground_utilisation("hammer", fixture=fixture)
    assert all("think" not in e["verbs"] for e in hammer.evidence.values())
    report("knowledge pipeline golden files")


def test_disputable_flagging():
    def concept(cid, mu):
        return Concept(
            id=cid,
            prototype={"d": "y"},
            memberships={"d": MembershipFunction.nominal_table({"x": mu, "y": 1.0})},
            weights={"d": 1.0},
            support=2,
        )

    dims = (DimensionSpec(id="d", domain="dom", kind="nominal", categories=("x", "y")),)
    duplicates = ConceptualSpace(
        dimensions=dims, concepts={"a": concept("a", 0.8), "b": concept("b", 0.8)}, standardization={}
    )
    instance = Instance(id="q", values={"d": "x"})
    result = classify(instance, duplicates)
    assert result.margin == 0.0
    assert result.disputable
    assert result.winner == "a"

    staggered = ConceptualSpace(
        dimensions=dims, concepts={"a": concept("a", 0.9), "b": concept("b", 0.6)}, standardization={}
    )
    margin = classify(instance, staggered).margin
    assert margin > 0
    for delta, expect in ((margin * 0.5, False), (margin, False), (margin * 1.000001, True), (margin * 2, True)):
        assert classify(instance, staggered, delta=delta).disputable is expect
    report("disputable flagging and delta sweep")


def test_voronoi_consistency():
    # Uniform weights and one shared-width Gaussian dimension: typicality is
    # a strictly decreasing transform of prototype distance, so the argmax
    # matches the nearest-prototype rule everywhere.
    dim = DimensionSpec(id="x", domain="pos", kind="continuous", unit="", range=(0.0, 1.0))
    protos = {"a": 0.1, "b": 0.35, "c": 0.62, "d": 0.9}
    concepts = {
        cid: Concept(
            id=cid,
            prototype={"x": p},
            memberships={"x": MembershipFunction.gaussian(p, 0.15)},
            weights={"x": 1.0},
            support=2,
        )
        for cid, p in protos.items()
    }
    space = ConceptualSpace(dimensions=(dim,), concepts=concepts, standardization={"x": (0.0, 1.0)})
    rng = random.Random(11)
    for _ in range(500):
        point = Instance(id="p", values={"x": rng.uniform(0.0, 1.0)})
        assert classify(point, space).winner == voronoi_assign(point, space)
    report("voronoi consistency (500 points)")


def test_determinism_and_round_trip(tmp_path, capsys):
    config = builtin_fixture("drill-riveter")
    ds_a, ds_b = tmp_path / "a.json", tmp_path / "b.json"
    generate_to_file(config, ds_a)
    generate_to_file(config, ds_b)
    assert ds_a.read_bytes() == ds_b.read_bytes()

    space = train(generate(config))
    m1, m2 = tmp_path / "m1.json", tmp_path / "m2.json"
    save_space(space, m1)
    save_space(load_space(m1), m2)
    assert m1.read_bytes() == m2.read_bytes()

    # CLI and HTTP emit identical JSON for the same classify input.
    from fastapi.testclient import TestClient

    from conceptspace.cli import main
    from conceptspace.service import ServiceConfig, create_app

    instance_path = tmp_path / "inst.json"
    values = dict(space.concepts["drill"].prototype)
    instance_path.write_text(json.dumps({"id": "p", "values": values}))
    assert main(["classify", "--model", str(m1), "--instance", str(instance_path)]) == 0
    cli_out = capsys.readouterr().out.strip()
    client = TestClient(create_app(ServiceConfig(model_path=str(m1))))
    http_out = client.post("/v1/classify", json={"instance": {"id": "p", "values": values}}).content.decode()
    assert cli_out == http_out
    assert json.loads(cli_out) == json.loads(http_out)
    report("determinism, round-trip, CLI/HTTP parity")

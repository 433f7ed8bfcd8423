import math

import pytest

from conceptspace.errors import InvalidInputError
from conceptspace.explain import WhatIfRequest, explain, feature_importance, whatif
from conceptspace.model import Concept, Instance, MembershipFunction
from conceptspace.serialization import model_hash
from conftest import make_nominal_space

INSTANCE = Instance(id="q", values={"d1": "x", "d2": "x"})


def weighted_space(mus, weights):
    return make_nominal_space(
        {"a": {"d1": {"x": mus[0], "y": 1.0}, "d2": {"x": mus[1], "y": 1.0}}},
        {"a": {"d1": weights[0], "d2": weights[1]}},
    )


class TestExplain:
    def test_uniform_weights_equal_contributions(self):
        report = explain(INSTANCE, weighted_space((1.0, 1.0), (0.5, 0.5)))
        contributions = {f["dimension"]: f["contribution"] for f in report.top_factors}
        assert contributions["d1"] == pytest.approx(0.5, abs=1e-12)
        assert contributions["d2"] == pytest.approx(0.5, abs=1e-12)

    def test_weighted_decomposition(self):
        # w = (3, 1), mu = (1, 0.5): shares are 0.75/0.8125 and 0.0625/0.8125
        report = explain(INSTANCE, weighted_space((1.0, 0.5), (3.0, 1.0)))
        contributions = {f["dimension"]: f["contribution"] for f in report.top_factors}
        assert contributions["d1"] == pytest.approx(0.75 / 0.8125, abs=1e-12)
        assert contributions["d2"] == pytest.approx(0.0625 / 0.8125, abs=1e-12)

    def test_contributions_sum_to_one_per_concept(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        for cid, breakdown in report.result.per_dimension.items():
            assert math.fsum(e["contribution"] for e in breakdown.values()) == pytest.approx(1.0, abs=1e-9)

    def test_top_factors_sorted_descending(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        contribs = [f["contribution"] for f in report.top_factors]
        assert contribs == sorted(contribs, reverse=True)

    def test_drill_rationale_matches_template(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        assert (
            "I believe this is a drill as it looks similar to other drills "
            "I've seen in the past, and it is used for drilling" in report.rationale
        )

    def test_rationale_names_only_top_factors(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        named = {f["dimension"] for f in report.top_factors[:2]}
        other = {f["dimension"] for f in report.top_factors[2:]}
        for dim in other - named:
            assert f"on {dim} " not in report.rationale

    def test_disputable_result_carries_hedge_and_runner_up(self):
        space = make_nominal_space(
            {
                "a": {"d1": {"x": 0.8, "y": 1.0}, "d2": {"x": 0.8, "y": 1.0}},
                "b": {"d1": {"x": 0.8, "y": 1.0}, "d2": {"x": 0.8, "y": 1.0}},
            },
            {"a": {"d1": 1.0, "d2": 1.0}, "b": {"d1": 1.0, "d2": 1.0}},
        )
        report = explain(INSTANCE, space)
        assert report.result.disputable
        assert "disputable" in report.rationale
        assert "b" in report.rationale

    def test_chart_data_shape(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        bar = report.chart_data["bar"]
        scores = report.result.scores
        assert bar["labels"] == sorted(scores, key=lambda c: (-scores[c], c))
        assert bar["series"][0]["values"] == [scores[c] for c in bar["labels"]]
        spider = report.chart_data["spider"]
        assert spider["labels"] == [d.id for d in drill_riveter_space.dimensions]
        assert {s["name"] for s in spider["series"]} == set(scores)

    def test_exemplar_lists_prototypes(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        report = explain(inst, drill_riveter_space)
        assert report.exemplar["drill"] == dict(drill_riveter_space.concepts["drill"].prototype)


class TestFeatureImportance:
    def test_normalized_and_sorted(self):
        concept = Concept(
            id="c",
            prototype={"a": "x", "b": "x"},
            memberships={d: MembershipFunction.nominal_table({"x": 1.0}) for d in ("a", "b")},
            weights={"a": 1.0, "b": 0.05},
            support=2,
        )
        ranked = feature_importance(concept)
        assert [f["dimension"] for f in ranked] == ["a", "b"]
        assert ranked[0]["weight"] == pytest.approx(1.0 / 1.05, abs=1e-12)
        assert ranked[1]["weight"] == pytest.approx(0.05 / 1.05, abs=1e-12)

    def test_equal_weights_split_evenly(self):
        concept = Concept(
            id="c",
            prototype={d: "x" for d in "abcd"},
            memberships={d: MembershipFunction.nominal_table({"x": 1.0}) for d in "abcd"},
            weights={d: 0.7 for d in "abcd"},
            support=2,
        )
        ranked = feature_importance(concept)
        assert all(f["weight"] == pytest.approx(0.25, abs=1e-12) for f in ranked)
        assert [f["dimension"] for f in ranked] == ["a", "b", "c", "d"]

    def test_utilisation_ranks_first_on_drill(self, drill_riveter_space):
        ranked = feature_importance(drill_riveter_space.concepts["drill"])
        assert ranked[0]["dimension"].startswith("utilisation:")


class TestWhatIf:
    def test_empty_overrides_change_nothing(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        result = whatif(WhatIfRequest(instance=inst), drill_riveter_space)
        assert not result.changed
        assert result.before == result.after
        assert all(d == 0.0 for d in result.delta_scores.values())

    def test_overrides_equal_to_current_parameters_change_nothing(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        concept = drill_riveter_space.concepts["drill"]
        request = WhatIfRequest(
            instance=inst,
            weight_overrides={"drill": dict(concept.weights)},
            value_overrides=dict(inst.values),
        )
        result = whatif(request, drill_riveter_space)
        assert not result.changed
        assert result.before.scores == result.after.scores

    def test_value_flip_reclassifies_drill_as_riveter(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        request = WhatIfRequest(
            instance=inst,
            value_overrides={"utilisation:drill": 0, "utilisation:rivet": 1},
        )
        result = whatif(request, drill_riveter_space)
        assert result.before.winner == "drill"
        assert result.after.winner == "riveter"
        assert result.changed

    def test_weight_collapse_flips_riveter_back_to_drill(self, drill_riveter_space):
        # The probe instance physically matches the drill but is used for riveting.
        values = dict(drill_riveter_space.concepts["drill"].prototype)
        values["utilisation:drill"] = 0
        values["utilisation:rivet"] = 1
        inst = Instance(id="q", values=values)
        overrides = {
            cid: {"utilisation:drill": 0.001, "utilisation:rivet": 0.001}
            for cid in drill_riveter_space.concepts
        }
        result = whatif(WhatIfRequest(instance=inst, weight_overrides=overrides), drill_riveter_space)
        assert result.before.winner == "riveter"
        assert result.after.winner == "drill"
        assert result.changed

    def test_model_untouched_by_whatif_sequence(self, drill_riveter_space):
        before_hash = model_hash(drill_riveter_space)
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        for _ in range(3):
            whatif(
                WhatIfRequest(
                    instance=inst,
                    weight_overrides={"drill": {"size_m": 0.2}},
                    membership_overrides={"drill": {"size_m": {"width": 0.5}}},
                    value_overrides={"hue_deg": 10.0},
                ),
                drill_riveter_space,
            )
        assert model_hash(drill_riveter_space) == before_hash

    def test_invalid_weight_override_names_key(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        with pytest.raises(InvalidInputError, match="size_m"):
            whatif(WhatIfRequest(instance=inst, weight_overrides={"drill": {"size_m": 1.5}}), drill_riveter_space)

    def test_unknown_override_dimension_rejected(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        with pytest.raises(InvalidInputError, match="bogus"):
            whatif(WhatIfRequest(instance=inst, weight_overrides={"drill": {"bogus": 0.5}}), drill_riveter_space)

    def test_unknown_override_concept_rejected(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        with pytest.raises(InvalidInputError, match="wrench"):
            whatif(WhatIfRequest(instance=inst, weight_overrides={"wrench": {"size_m": 0.5}}), drill_riveter_space)

    def test_invalid_value_override_rejected(self, drill_riveter_space):
        inst = Instance(id="q", values=dict(drill_riveter_space.concepts["drill"].prototype))
        with pytest.raises(InvalidInputError, match="utilisation:drill"):
            whatif(WhatIfRequest(instance=inst, value_overrides={"utilisation:drill": 2}), drill_riveter_space)

    def test_membership_override_changes_mu(self, drill_riveter_space):
        values = dict(drill_riveter_space.concepts["drill"].prototype)
        inst = Instance(id="q", values=values)
        wide = whatif(
            WhatIfRequest(instance=inst, membership_overrides={"riveter": {"size_m": {"width": 5.0}}}),
            drill_riveter_space,
        )
        assert wide.after.per_dimension["riveter"]["size_m"]["mu"] > wide.before.per_dimension["riveter"]["size_m"]["mu"]

import math

import pytest

from conceptspace.errors import InvalidInputError, NotFoundError
from conceptspace.knowledge import (
    filter_physical,
    ground_utilisation,
    grounding_to_doc,
    mine_usedfor,
    select_synset,
    softmax_grounding,
    stem_fallback,
)
from conceptspace.knowledge.fixture import fixture_from_doc
from conceptspace.knowledge.pipeline import extract_verb


def mini_fixture(edges=(), wordnet=None):
    doc = {
        "wordnet": wordnet
        or {
            "carry": [{"synset": "carry.v.01", "pos": "v", "lexname": "verb.motion", "freq": 5, "lemmas": ["carry"]}],
            "drill": [
                {"synset": "drill.n.01", "pos": "n", "lexname": "noun.artifact", "freq": 3, "lemmas": ["drill"]},
                {"synset": "drill.v.01", "pos": "v", "lexname": "verb.contact", "freq": 2, "lemmas": ["drill"]},
            ],
            "forklift": [{"synset": "forklift.n.01", "pos": "n", "lexname": "noun.artifact", "freq": 1, "lemmas": ["forklift"]}],
        },
        "conceptnet_edges": list(edges),
    }
    return fixture_from_doc(doc)


class TestSelectSynset:
    def test_frequency_disambiguation(self, knowledge_fixture):
        # Two artefact readings; the hand-tool one is far more frequent.
        assert select_synset("hammer", knowledge_fixture) == "hammer.n.02"

    def test_single_artefact_synset(self, knowledge_fixture):
        assert select_synset("drill", knowledge_fixture) == "drill.n.01"

    def test_non_artefact_label_not_found(self, knowledge_fixture):
        with pytest.raises(NotFoundError):
            select_synset("happiness", knowledge_fixture)

    def test_unknown_label_not_found(self, knowledge_fixture):
        with pytest.raises(NotFoundError):
            select_synset("gizmo", knowledge_fixture)

    def test_frequency_tie_breaks_on_synset_id(self):
        fixture = fixture_from_doc(
            {
                "wordnet": {
                    "widget": [
                        {"synset": "widget.n.02", "pos": "n", "lexname": "noun.artifact", "freq": 4, "lemmas": ["widget"]},
                        {"synset": "widget.n.01", "pos": "n", "lexname": "noun.artifact", "freq": 4, "lemmas": ["widget"]},
                    ]
                },
                "conceptnet_edges": [],
            }
        )
        assert select_synset("widget", fixture) == "widget.n.01"


class TestExtractVerb:
    @pytest.mark.parametrize(
        "phrase,verb",
        [
            ("drilling holes in things", "drill"),
            ("drill a hole in something", "drill"),
            ("carrying heavy loads", "carry"),
            ("making holes", "make"),
            ("hammered metal", "hammer"),
        ],
    )
    def test_cascade(self, phrase, verb, knowledge_fixture):
        assert extract_verb(phrase, knowledge_fixture) == verb

    def test_unknown_token_returns_none(self, knowledge_fixture):
        assert extract_verb("blorping wildly", knowledge_fixture) is None


class TestMineUsedFor:
    def test_crowd_fallback_for_forklift(self):
        fixture = mini_fixture([
            {"start": "forklift", "relation": "UsedFor", "end": "carrying heavy loads", "weight": 2.0, "source": "crowd"},
        ])
        mined = mine_usedfor(["forklift"], fixture)
        assert mined.verbs == ("carry",)
        assert mined.provenance == "crowd_edge"

    def test_low_weight_crowd_edge_excluded(self):
        fixture = mini_fixture([
            {"start": "forklift", "relation": "UsedFor", "end": "carrying heavy loads", "weight": 1.0, "source": "crowd"},
        ])
        mined = mine_usedfor(["forklift"], fixture)
        assert mined.verbs == ()
        assert mined.provenance == "none"

    def test_wordnet_edge_preferred(self):
        fixture = mini_fixture([
            {"start": "drill", "relation": "UsedFor", "end": "drilling holes in things", "weight": 2.0, "source": "wordnet"},
            {"start": "drill", "relation": "UsedFor", "end": "carrying heavy loads", "weight": 9.0, "source": "crowd"},
        ])
        mined = mine_usedfor(["drill"], fixture)
        assert mined.verbs == ("drill",)
        assert mined.provenance == "wordnet_edge"

    def test_deduplicates_verbs(self):
        fixture = mini_fixture([
            {"start": "drill", "relation": "UsedFor", "end": "drilling holes", "weight": 2.0, "source": "wordnet"},
            {"start": "drill", "relation": "UsedFor", "end": "drill a hole", "weight": 2.0, "source": "wordnet"},
        ])
        assert mine_usedfor(["drill"], fixture).verbs == ("drill",)


class TestStemFallback:
    def test_riveter_stems_to_rivet(self, knowledge_fixture):
        assert stem_fallback("riveter", knowledge_fixture) == "rivet"

    def test_noun_verb_labels_return_themselves(self, knowledge_fixture):
        assert stem_fallback("hammer", knowledge_fixture) == "hammer"
        assert stem_fallback("drill", knowledge_fixture) == "drill"

    def test_no_verb_reading_returns_none(self, knowledge_fixture):
        assert stem_fallback("happiness", knowledge_fixture) is None
        assert stem_fallback("beauty", knowledge_fixture) is None


class TestFilterPhysical:
    def test_contact_verb_kept(self, knowledge_fixture):
        assert filter_physical(["drill"], knowledge_fixture) == ["drill"]

    def test_cognition_verb_dropped(self, knowledge_fixture):
        assert filter_physical(["think"], knowledge_fixture) == []

    def test_empty_input(self, knowledge_fixture):
        assert filter_physical([], knowledge_fixture) == []

    def test_allow_list_is_configurable(self, knowledge_fixture):
        assert filter_physical(["think"], knowledge_fixture, lexnames=("verb.cognition",)) == ["think"]


class TestSoftmaxGrounding:
    def test_single_group(self):
        assert softmax_grounding({"drill": 16.0}) == {"drill": 1.0}

    def test_dominant_group_matches_reported_magnitude(self):
        mu = softmax_grounding({"drill": 16.0, "make": 1.0})
        assert mu["drill"] == pytest.approx(1.0 / (1.0 + math.exp(-15.0)), abs=1e-15)
        assert abs(mu["drill"] - 0.9999997) < 5e-7

    def test_equal_weights(self):
        assert softmax_grounding({"a": 2.0, "b": 2.0}) == {"a": 0.5, "b": 0.5}

    def test_sums_to_one(self):
        mu = softmax_grounding({"a": 0.3, "b": 4.1, "c": 2.2})
        assert math.fsum(mu.values()) == pytest.approx(1.0, abs=1e-9)

    def test_empty_rejected(self):
        with pytest.raises(InvalidInputError):
            softmax_grounding({})

    def test_shift_invariance(self):
        base = softmax_grounding({"a": 1.0, "b": 3.0})
        shifted = softmax_grounding({"a": 101.0, "b": 103.0})
        assert base == shifted


class TestGroundUtilisation:
    def test_riveter_grounds_via_stem(self, knowledge_fixture):
        g = ground_utilisation("riveter", fixture=knowledge_fixture)
        assert g.dims == {"drill": 0, "hammer": 0, "lift": 0, "rivet": 1}
        assert g.provenance == "stem_fallback"

    def test_forklift_grounds_via_crowd(self, knowledge_fixture):
        g = ground_utilisation("forklift", fixture=knowledge_fixture)
        assert g.dims == {"drill": 0, "hammer": 0, "lift": 1, "rivet": 0}
        assert g.provenance == "crowd_edge"
        assert "move" not in g.evidence["lift"]["verbs"]  # its edge weighs only 1.0

    def test_unknown_label_is_all_zero(self, knowledge_fixture):
        g = ground_utilisation("gizmo", fixture=knowledge_fixture)
        assert set(g.dims.values()) == {0}
        assert g.provenance == "none"
        assert g.softmax == {}

    def test_prefixed_dimension_ids_supported(self, knowledge_fixture):
        g = ground_utilisation("riveter", target_dims=("utilisation:rivet", "utilisation:drill"), fixture=knowledge_fixture)
        assert g.dims == {"utilisation:rivet": 1, "utilisation:drill": 0}

    def test_softmax_evidence_sums_to_one(self, knowledge_fixture):
        g = ground_utilisation("hammer", fixture=knowledge_fixture)
        assert math.fsum(g.softmax.values()) == pytest.approx(1.0, abs=1e-9)

    def test_cognition_sense_never_grounds(self, knowledge_fixture):
        # "thinking about carpentry" mines the verb, the physical filter drops it.
        g = ground_utilisation("hammer", fixture=knowledge_fixture)
        assert "think" not in g.evidence["hammer"]["verbs"]
        assert g.dims["hammer"] == 1

    def test_doc_is_stable(self, knowledge_fixture):
        from conceptspace.serialization import canonical_json

        a = canonical_json(grounding_to_doc(ground_utilisation("drill", fixture=knowledge_fixture)))
        b = canonical_json(grounding_to_doc(ground_utilisation("drill", fixture=knowledge_fixture)))
        assert a == b


class TestFixtureValidation:
    def test_unknown_relation_rejected(self):
        with pytest.raises(InvalidInputError):
            fixture_from_doc({"wordnet": {}, "conceptnet_edges": [
                {"start": "a", "relation": "Bogus", "end": "b", "weight": 2.0, "source": "crowd"}
            ]})

    def test_negative_frequency_rejected(self):
        with pytest.raises(InvalidInputError):
            fixture_from_doc({"wordnet": {"a": [
                {"synset": "a.n.01", "pos": "n", "lexname": "noun.artifact", "freq": -1, "lemmas": ["a"]}
            ]}, "conceptnet_edges": []})

    def test_directory_merge(self, tmp_path, knowledge_fixture):
        import json

        from conceptspace.knowledge import load_fixture

        (tmp_path / "one.json").write_text(json.dumps({"wordnet": {
            "spanner": [{"synset": "spanner.n.01", "pos": "n", "lexname": "noun.artifact", "freq": 1, "lemmas": ["spanner"]}]
        }, "conceptnet_edges": []}))
        (tmp_path / "two.json").write_text(json.dumps({"wordnet": {}, "conceptnet_edges": [
            {"start": "spanner", "relation": "UsedFor", "end": "turning bolts", "weight": 2.0, "source": "crowd"}
        ]}))
        fixture = load_fixture(tmp_path)
        assert fixture.entries("spanner")
        assert len(fixture.edges) == 1

from .fixture import KnowledgeFixture, SynsetEntry, Edge, load_fixture, builtin_fixture_path
from .pipeline import (
    UtilisationGrounding,
    MinedVerbs,
    select_synset,
    mine_usedfor,
    stem_fallback,
    filter_physical,
    ground_utilisation,
    softmax_grounding,
    grounding_to_doc,
    DEFAULT_UTILISATION_DIMS,
)

__all__ = [
    "KnowledgeFixture",
    "SynsetEntry",
    "Edge",
    "load_fixture",
    "builtin_fixture_path",
    "UtilisationGrounding",
    "MinedVerbs",
    "select_synset",
    "mine_usedfor",
    "stem_fallback",
    "filter_physical",
    "ground_utilisation",
    "softmax_grounding",
    "grounding_to_doc",
    "DEFAULT_UTILISATION_DIMS",
]

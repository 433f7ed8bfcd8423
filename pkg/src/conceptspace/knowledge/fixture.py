"""Knowledge fixtures: a local, file-backed snapshot of the lexical and
commonsense data the extraction pipeline consults.

A fixture bundles WordNet-style synset entries (per lemma: synset id, part
of speech, lexicographer file name, corpus frequency, member lemmas) with
ConceptNet-style edges (start lemma, relation, end phrase, weight, source).
Everything the pipeline does runs against fixtures, so results are
deterministic and golden-file testable; the live client only *produces*
files in this same format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from ..errors import InvalidInputError

# ConceptNet's consolidated relation vocabulary.
RELATION_TYPES = frozenset(
    {
        "Antonym", "AtLocation", "CapableOf", "Causes", "CausesDesire", "CreatedBy",
        "DefinedAs", "DerivedFrom", "Desires", "DistinctFrom", "Entails",
        "EtymologicallyDerivedFrom", "EtymologicallyRelatedTo", "ExternalURL",
        "FormOf", "HasA", "HasContext", "HasFirstSubevent", "HasLastSubevent",
        "HasPrerequisite", "HasProperty", "HasSubevent", "InstanceOf", "IsA",
        "LocatedNear", "MadeOf", "MannerOf", "MotivatedByGoal", "ObstructedBy",
        "PartOf", "ReceivesAction", "RelatedTo", "SimilarTo", "SymbolOf",
        "Synonym", "UsedFor",
    }
)

EDGE_SOURCES = ("wordnet", "crowd")


@dataclass(frozen=True)
class SynsetEntry:
    """One (lemma, synset) pairing with its corpus frequency."""

    synset: str
    pos: str
    lexname: str
    freq: int
    lemmas: tuple[str, ...]


@dataclass(frozen=True)
class Edge:
    start: str
    relation: str
    end: str
    weight: float
    source: str


@dataclass(frozen=True)
class KnowledgeFixture:
    wordnet: Mapping[str, tuple[SynsetEntry, ...]]
    edges: tuple[Edge, ...]
    utilisation_refs: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def entries(self, lemma: str) -> tuple[SynsetEntry, ...]:
        return self.wordnet.get(lemma, ())

    def verb_entries(self, lemma: str, lexnames: Iterable[str] | None = None) -> list[SynsetEntry]:
        allowed = set(lexnames) if lexnames is not None else None
        return [
            e for e in self.entries(lemma)
            if e.pos == "v" and (allowed is None or e.lexname in allowed)
        ]

    def has_verb_reading(self, word: str) -> bool:
        return bool(self.verb_entries(word))

    def freq_of(self, lemma: str, synset: str) -> int:
        for entry in self.entries(lemma):
            if entry.synset == synset:
                return entry.freq
        return 0


def fixture_from_doc(doc: dict) -> KnowledgeFixture:
    wordnet: dict[str, tuple[SynsetEntry, ...]] = {}
    for lemma, entries in doc.get("wordnet", {}).items():
        parsed = []
        for e in entries:
            freq = int(e.get("freq", 0))
            if freq < 0:
                raise InvalidInputError(f"lemma {lemma!r}: negative frequency {freq}")
            parsed.append(
                SynsetEntry(
                    synset=e["synset"],
                    pos=e["pos"],
                    lexname=e["lexname"],
                    freq=freq,
                    lemmas=tuple(e.get("lemmas", (lemma,))),
                )
            )
        wordnet[lemma] = tuple(parsed)
    edges = []
    for e in doc.get("conceptnet_edges", ()):
        relation = e["relation"]
        if relation not in RELATION_TYPES:
            raise InvalidInputError(f"unknown relation type {relation!r}")
        weight = float(e["weight"])
        if not math.isfinite(weight):
            raise InvalidInputError(f"edge {e['start']!r} -> {e['end']!r} has non-finite weight")
        source = e["source"]
        if source not in EDGE_SOURCES:
            raise InvalidInputError(f"unknown edge source {source!r}")
        edges.append(Edge(start=e["start"], relation=relation, end=e["end"], weight=weight, source=source))
    refs = {dim: tuple(ids) for dim, ids in doc.get("utilisation_refs", {}).items()}
    return KnowledgeFixture(wordnet=wordnet, edges=tuple(edges), utilisation_refs=refs)


def _merge_docs(docs: list[dict]) -> dict:
    merged: dict = {"wordnet": {}, "conceptnet_edges": [], "utilisation_refs": {}}
    for doc in docs:
        for lemma, entries in doc.get("wordnet", {}).items():
            merged["wordnet"].setdefault(lemma, []).extend(entries)
        merged["conceptnet_edges"].extend(doc.get("conceptnet_edges", ()))
        merged["utilisation_refs"].update(doc.get("utilisation_refs", {}))
    return merged


def load_fixture(path: str | Path) -> KnowledgeFixture:
    """Load one fixture file, or merge every ``*.json`` in a directory
    (one file per knowledge source)."""
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.json"))
        if not files:
            raise InvalidInputError(f"no fixture files found in {p}")
        docs = [json.loads(f.read_text(encoding="utf-8")) for f in files]
        return fixture_from_doc(_merge_docs(docs))
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidInputError(f"fixture file {p} does not exist") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"fixture file {p} is not valid JSON: {exc}") from exc
    return fixture_from_doc(doc)


def builtin_fixture_path() -> Path:
    """Path of the knowledge fixture shipped with the package."""
    return Path(resources.files("conceptspace").joinpath("data/knowledge_fixture.json"))


def load_builtin_fixture() -> KnowledgeFixture:
    return load_fixture(builtin_fixture_path())

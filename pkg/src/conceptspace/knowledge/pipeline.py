"""Utilisation-property extraction from lexical and commonsense knowledge.

Given an artefact label (e.g. "riveter"), the pipeline grounds binary
utilisation dimensions in five stages:

1. pick the artefact-noun synset for the label, disambiguating by corpus
   frequency of its member lemmas;
2. take all synonym lemmas of that synset;
3. mine UsedFor edges for those lemmas, trusting curated (wordnet-sourced)
   edges first and falling back to crowdsourced edges with weight > 1.0,
   extracting a head verb from each end phrase;
   3b. if that yields nothing usable, stem the label itself (riveter ->
   rivet) and keep the stem when it has a verb reading;
4. keep only verbs with a physical sense (verb.contact / verb.change /
   verb.motion by default);
5. set a utilisation dimension to 1 when the surviving verb senses intersect
   the dimension's reference senses.

End phrases with the same head verb ("drilling holes in things", "drill a
hole in something") are grouped, their weights summed, and a softmax over
the group weights kept as membership evidence alongside the binary values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidInputError, NotFoundError
from .fixture import Edge, KnowledgeFixture

PHYSICAL_LEXNAMES = ("verb.contact", "verb.change", "verb.motion")
DEFAULT_UTILISATION_DIMS = ("drill", "hammer", "lift", "rivet")

PROVENANCE_WORDNET = "wordnet_edge"
PROVENANCE_CROWD = "crowd_edge"
PROVENANCE_STEM = "stem_fallback"
PROVENANCE_NONE = "none"

# Crowd edges at or below this weight are treated as noise.
MIN_CROWD_WEIGHT = 1.0


@dataclass(frozen=True)
class MinedVerbs:
    verbs: tuple[str, ...]
    provenance: str
    edges: tuple[Edge, ...] = ()


@dataclass(frozen=True)
class UtilisationGrounding:
    """Binary utilisation values plus the evidence that produced them."""

    label: str
    dims: Mapping[str, int]
    evidence: Mapping[str, dict]
    softmax: Mapping[str, float]
    provenance: str


def select_synset(label: str, fixture: KnowledgeFixture) -> str:
    """Pick the artefact-noun synset whose member lemmas are most frequent.

    Ties break on the smallest synset id; a label without any artefact-noun
    reading raises NotFoundError (callers may continue with the bare label).
    """
    if not label:
        raise InvalidInputError("label must be non-empty")
    candidates = [
        e for e in fixture.entries(label)
        if e.pos == "n" and e.lexname == "noun.artifact"
    ]
    if not candidates:
        raise NotFoundError(f"no artefact-noun synset for label {label!r}")

    def summed_freq(entry) -> int:
        return sum(fixture.freq_of(m, entry.synset) for m in entry.lemmas)

    return sorted(candidates, key=lambda e: (-summed_freq(e), e.synset))[0].synset


def synset_lemmas(label: str, synset_id: str, fixture: KnowledgeFixture) -> tuple[str, ...]:
    for entry in fixture.entries(label):
        if entry.synset == synset_id:
            return entry.lemmas
    return (label,)


def _stem_candidates(stem: str) -> list[str]:
    """Repair variants after stripping a suffix: the bare stem, the stem with
    a doubled final consonant undone, and the stem with a silent e restored."""
    out = [stem]
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
        out.append(stem[:-1])
    out.append(stem + "e")
    return out


def extract_verb(phrase: str, fixture: KnowledgeFixture) -> str | None:
    """Pull a lemmatized head verb out of a free-text utilisation phrase.

    Deliberately a rule cascade instead of a POS tagger: take the first
    token, strip -ing/-ed/-es/-s with doubled-consonant and silent-e repair,
    and accept the first candidate the fixture knows as a verb.
    """
    tokens = phrase.lower().split()
    if not tokens:
        return None
    token = tokens[0].strip(".,;:!?'\"()")
    for suffix in ("ing", "ed", "es", "s"):
        if token.endswith(suffix) and len(token) > len(suffix) + 1:
            for candidate in _stem_candidates(token[: -len(suffix)]):
                if fixture.has_verb_reading(candidate):
                    return candidate
    if fixture.has_verb_reading(token):
        return token
    return None


def mine_usedfor(lemmas: Sequence[str], fixture: KnowledgeFixture) -> MinedVerbs:
    """Collect UsedFor verbs for the given lemmas.

    Curated wordnet-sourced edges take precedence; crowdsourced edges are
    consulted only when no curated edge exists, and any crowd edge with
    weight <= 1.0 is discarded as noise.
    """
    lemma_set = set(lemmas)
    wn_edges = tuple(
        e for e in fixture.edges
        if e.source == "wordnet" and e.relation == "UsedFor" and e.start in lemma_set
    )
    if wn_edges:
        verbs = _dedup(extract_verb(e.end, fixture) for e in wn_edges)
        return MinedVerbs(verbs=verbs, provenance=PROVENANCE_WORDNET if verbs else PROVENANCE_NONE, edges=wn_edges)
    crowd_edges = tuple(
        e for e in fixture.edges
        if e.source == "crowd" and e.relation == "UsedFor" and e.start in lemma_set
        and e.weight > MIN_CROWD_WEIGHT
    )
    verbs = _dedup(extract_verb(e.end, fixture) for e in crowd_edges)
    return MinedVerbs(verbs=verbs, provenance=PROVENANCE_CROWD if verbs else PROVENANCE_NONE, edges=crowd_edges)


def _dedup(items: Iterable[str | None]) -> tuple[str, ...]:
    seen = []
    for item in items:
        if item is not None and item not in seen:
            seen.append(item)
    return tuple(seen)


def stem_fallback(label: str, fixture: KnowledgeFixture) -> str | None:
    """Agentive-suffix heuristic: 'riveter' -> 'rivet'.

    Labels that already carry a verb reading ('hammer', 'drill') return
    themselves; otherwise -er/-or is stripped and repaired, and the stem is
    kept only when the fixture knows it as a verb.
    """
    if fixture.has_verb_reading(label):
        return label
    for suffix in ("er", "or"):
        if label.endswith(suffix) and len(label) > len(suffix) + 1:
            for candidate in _stem_candidates(label[: -len(suffix)]):
                if fixture.has_verb_reading(candidate):
                    return candidate
    return None


def filter_physical(
    verbs: Sequence[str],
    fixture: KnowledgeFixture,
    lexnames: Sequence[str] = PHYSICAL_LEXNAMES,
) -> list[str]:
    """Keep verbs with at least one sense in the physical verb categories."""
    return [v for v in verbs if fixture.verb_entries(v, lexnames)]


def softmax_grounding(entries: Mapping[str, float]) -> dict[str, float]:
    """Softmax over grouped phrase weights (temperature 1)."""
    if not entries:
        raise InvalidInputError("softmax needs at least one entry")
    weights = {k: float(w) for k, w in entries.items()}
    for k, w in weights.items():
        if not math.isfinite(w):
            raise InvalidInputError(f"non-finite weight for group {k!r}")
    top = max(weights.values())
    exps = {k: math.exp(w - top) for k, w in weights.items()}
    total = math.fsum(exps.values())
    return {k: exps[k] / total for k in sorted(exps)}


def group_phrases(edges: Sequence[Edge], fixture: KnowledgeFixture) -> dict[str, float]:
    """Group end phrases by extracted head verb; group weight sums members.

    Phrases without an extractable verb group under their first token, so
    the softmax evidence still covers them.
    """
    groups: dict[str, list[float]] = {}
    for edge in edges:
        key = extract_verb(edge.end, fixture)
        if key is None:
            tokens = edge.end.lower().split()
            key = tokens[0] if tokens else edge.end
        groups.setdefault(key, []).append(edge.weight)
    return {k: math.fsum(ws) for k, ws in groups.items()}


def _reference_synsets(dim: str, fixture: KnowledgeFixture, lexnames: Sequence[str]) -> frozenset[str]:
    verb_key = dim.split(":")[-1]
    refs = fixture.utilisation_refs.get(verb_key)
    if refs:
        return frozenset(refs)
    # Seeded from the dimension's own verb lemma when the fixture carries no
    # explicit reference list.
    return frozenset(e.synset for e in fixture.verb_entries(verb_key, lexnames))


def ground_utilisation(
    label: str,
    target_dims: Sequence[str] = DEFAULT_UTILISATION_DIMS,
    fixture: KnowledgeFixture | None = None,
    lexnames: Sequence[str] = PHYSICAL_LEXNAMES,
) -> UtilisationGrounding:
    """Run the full extraction pipeline for one artefact label."""
    if fixture is None:
        from .fixture import load_builtin_fixture

        fixture = load_builtin_fixture()
    label = label.strip().lower()
    if not label:
        raise InvalidInputError("label must be non-empty")
    try:
        synset = select_synset(label, fixture)
        lemmas = synset_lemmas(label, synset, fixture)
    except NotFoundError:
        lemmas = (label,)
    mined = mine_usedfor(lemmas, fixture)
    physical = filter_physical(mined.verbs, fixture, lexnames)
    provenance = mined.provenance
    groups = group_phrases(mined.edges, fixture) if mined.edges else {}
    if not physical:
        # The edge stages produced nothing with a physical sense; stem the
        # label itself as a last resort.
        stem = stem_fallback(label, fixture)
        physical = filter_physical([stem], fixture, lexnames) if stem else []
        if physical:
            provenance = PROVENANCE_STEM
            groups = {stem: 1.0}
        else:
            provenance = PROVENANCE_NONE
            groups = {}
    softmax = softmax_grounding(groups) if groups else {}
    candidate_synsets: dict[str, frozenset[str]] = {
        v: frozenset(e.synset for e in fixture.verb_entries(v, lexnames)) for v in physical
    }
    dims: dict[str, int] = {}
    evidence: dict[str, dict] = {}
    for dim in target_dims:
        refs = _reference_synsets(dim, fixture, lexnames)
        matched = [v for v in physical if candidate_synsets[v] & refs]
        dims[dim] = 1 if matched else 0
        evidence[dim] = {"verbs": matched, "mu": {k: softmax[k] for k in matched if k in softmax}}
    return UtilisationGrounding(label=label, dims=dims, evidence=evidence, softmax=softmax, provenance=provenance)


def grounding_to_doc(grounding: UtilisationGrounding) -> dict:
    return {
        "label": grounding.label,
        "dims": {d: grounding.dims[d] for d in sorted(grounding.dims)},
        "evidence": {d: grounding.evidence[d] for d in sorted(grounding.evidence)},
        "softmax": {k: grounding.softmax[k] for k in sorted(grounding.softmax)},
        "provenance": grounding.provenance,
    }

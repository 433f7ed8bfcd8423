"""Reader for WordNet database dump files.

Parses the classic ``data.{noun,verb}`` / ``index.{noun,verb}`` line format
(synset offset, lexicographer file number, member words) plus the optional
``cntlist.rev`` sense-count list, and emits a knowledge-fixture document so
locally installed WordNet dumps can feed the extraction pipeline directly.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import InvalidInputError

# Lexicographer file numbers -> lexnames, as shipped in WordNet's lexnames file.
LEXNAMES = {
    0: "adj.all", 1: "adj.pert", 2: "adv.all", 3: "noun.Tops", 4: "noun.act",
    5: "noun.animal", 6: "noun.artifact", 7: "noun.attribute", 8: "noun.body",
    9: "noun.cognition", 10: "noun.communication", 11: "noun.event",
    12: "noun.feeling", 13: "noun.food", 14: "noun.group", 15: "noun.location",
    16: "noun.motive", 17: "noun.object", 18: "noun.person",
    19: "noun.phenomenon", 20: "noun.plant", 21: "noun.possession",
    22: "noun.process", 23: "noun.quantity", 24: "noun.relation",
    25: "noun.shape", 26: "noun.state", 27: "noun.substance", 28: "noun.time",
    29: "verb.body", 30: "verb.change", 31: "verb.cognition",
    32: "verb.communication", 33: "verb.competition", 34: "verb.consumption",
    35: "verb.contact", 36: "verb.creation", 37: "verb.emotion",
    38: "verb.motion", 39: "verb.perception", 40: "verb.possession",
    41: "verb.social", 42: "verb.stative", 43: "verb.weather", 44: "adj.ppl",
}

_SS_TYPE_TO_POS = {"1": "n", "2": "v", "3": "a", "4": "r", "5": "s"}


def _parse_data_file(path: Path, pos: str) -> dict[str, dict]:
    """Parse one data.pos file into {offset-id: {lexname, lemmas}}."""
    synsets: dict[str, dict] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("  "):
            continue
        head = line.split("|", 1)[0].split()
        if len(head) < 4:
            raise InvalidInputError(f"{path.name}: malformed data line {line[:40]!r}")
        offset, lex_filenum, ss_type = head[0], int(head[1]), head[2]
        w_cnt = int(head[3], 16)
        words = [head[4 + 2 * i].lower().replace("_", " ") for i in range(w_cnt)]
        synsets[f"{pos}{offset}"] = {
            "lexname": LEXNAMES.get(lex_filenum, f"lexfile.{lex_filenum}"),
            "lemmas": words,
            "ss_type": ss_type,
        }
    return synsets


def _parse_index_file(path: Path) -> dict[str, list[str]]:
    """Parse one index.pos file into {lemma: [synset offsets, sense order]}."""
    index: dict[str, list[str]] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("  "):
            continue
        parts = line.split()
        lemma, pos = parts[0].lower().replace("_", " "), parts[1]
        synset_cnt = int(parts[2])
        p_cnt = int(parts[3])
        offsets = parts[4 + p_cnt + 2 : 4 + p_cnt + 2 + synset_cnt]
        index[f"{lemma}%{pos}"] = offsets
    return index


def _parse_cntlist(path: Path, index: dict[str, list[str]]) -> dict[tuple[str, str], int]:
    """Parse cntlist.rev (sense_key sense_number tag_cnt) into
    {(lemma, pos+offset): count} via each lemma's sense ordering."""
    counts: dict[tuple[str, str], int] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        parts = line.split()
        if len(parts) != 3:
            continue
        sense_key, sense_number, tag_cnt = parts[0], int(parts[1]), int(parts[2])
        lemma, _, rest = sense_key.partition("%")
        lemma = lemma.lower().replace("_", " ")
        pos = _SS_TYPE_TO_POS.get(rest.split(":", 1)[0])
        if pos is None:
            continue
        offsets = index.get(f"{lemma}%{pos}", [])
        if 1 <= sense_number <= len(offsets):
            counts[(lemma, f"{pos}{offsets[sense_number - 1]}")] = tag_cnt
    return counts


def read_wordnet_database(directory: str | Path, pos_list: tuple[str, ...] = ("noun", "verb")) -> dict:
    """Read WordNet dump files from ``directory`` into a fixture document."""
    directory = Path(directory)
    pos_char = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}
    synsets: dict[str, dict] = {}
    index: dict[str, list[str]] = {}
    for pos_name in pos_list:
        data_path = directory / f"data.{pos_name}"
        index_path = directory / f"index.{pos_name}"
        if not data_path.exists() or not index_path.exists():
            raise InvalidInputError(f"missing {data_path.name} or {index_path.name} in {directory}")
        synsets.update(_parse_data_file(data_path, pos_char[pos_name]))
        index.update(_parse_index_file(index_path))
    cnt_path = directory / "cntlist.rev"
    counts = _parse_cntlist(cnt_path, index) if cnt_path.exists() else {}
    wordnet: dict[str, list[dict]] = {}
    for key, offsets in index.items():
        lemma, pos = key.rsplit("%", 1)
        for offset in offsets:
            syn_id = f"{pos}{offset}"
            syn = synsets.get(syn_id)
            if syn is None:
                continue
            wordnet.setdefault(lemma, []).append(
                {
                    "synset": syn_id,
                    "pos": pos,
                    "lexname": syn["lexname"],
                    "freq": counts.get((lemma, syn_id), 0),
                    "lemmas": syn["lemmas"],
                }
            )
    return {"wordnet": wordnet, "conceptnet_edges": []}


def dump_fixture(directory: str | Path, out_path: str | Path) -> None:
    doc = read_wordnet_database(directory)
    Path(out_path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")

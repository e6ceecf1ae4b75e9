"""Noun units of identifier names.

Identifier names (``getStringArrayListExtra``, ``user_account``) are split
into sub-words, and each sub-word is kept only when a tag-frequency lexicon
says it is most often a noun.  The surviving nouns are the name's *units*:
the objects the identifier talks about.  Two names agree when their unit
sets are equal or one of them is empty -- a pure verb name like ``peek``
constrains nothing.

The lexicon is plain data (word -> tag:count pairs, typically corpus
frequencies) plus an override list that forces individual words to count as
nouns regardless of frequency.  Lookups are memoized per word and counted,
so callers can verify that repeated tagging is free.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

__all__ = [
    "TagLexicon",
    "inflection_candidates",
    "Tagger",
    "split_name",
    "unit_consistent",
    "edge_unit_ok",
    "load_lexicon",
    "load_overrides",
    "bundled_lexicon",
]

NOUN = "NOUN"
VERB = "VERB"

_WORD_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def split_name(name: str) -> list[str]:
    """Split an identifier into lowercase sub-words.

    Underscores and lower-to-upper boundaries separate sub-words; a run of
    capitals keeps its last letter for the following lowercase run
    (``URLConnection`` -> ``url``, ``connection``); digits attach to the
    sub-word before them.
    """
    out: list[str] = []
    for segment in name.split("_"):
        for token in _WORD_RE.findall(segment):
            if token.isdigit() and out:
                out[-1] += token
            else:
                out.append(token.lower())
    return out


@dataclass(frozen=True)
class TagLexicon:
    """Tag-occurrence table plus noun-forcing overrides (overrides win)."""

    entries: dict[str, dict[str, int]] = field(default_factory=dict)
    overrides: dict[str, bool] = field(default_factory=dict)

    def tags(self, word: str) -> dict[str, int] | None:
        return self.entries.get(word)


def load_lexicon(path: str | Path, overrides: dict[str, bool] | None = None) -> TagLexicon:
    """Read a lexicon file: one ``word\\ttag:count(,tag:count)*`` per line."""
    entries: dict[str, dict[str, int]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            word, rest = line.split("\t", 1)
            counts: dict[str, int] = {}
            for pair in rest.split(","):
                tag, count = pair.split(":")
                counts[tag.strip()] = int(count)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed lexicon line") from exc
        if any(c <= 0 for c in counts.values()):
            raise ValueError(f"{path}:{lineno}: occurrence counts must be positive")
        entries[word.lower()] = counts
    return TagLexicon(entries=entries, overrides=dict(overrides or {}))


def load_overrides(path: str | Path) -> dict[str, bool]:
    """Read an override file: one forced-noun word per line."""
    out: dict[str, bool] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            out[word] = True
    return out


def bundled_lexicon() -> TagLexicon:
    """The lexicon and overrides shipped with the package."""
    data = resources.files("specinfer") / "data"
    with resources.as_file(data / "tag_lexicon.txt") as lex_path:
        with resources.as_file(data / "noun_overrides.txt") as ovr_path:
            return load_lexicon(lex_path, load_overrides(ovr_path))


def inflection_candidates(word: str) -> list[str]:
    """The word plus de-inflected stems worth looking up (s/es/ed/ing)."""
    cands = [word]
    if word.endswith("ies") and len(word) > 3:
        cands.append(word[:-3] + "y")
    if word.endswith("es") and len(word) > 2:
        cands.append(word[:-2])
    if word.endswith("s") and len(word) > 1:
        cands.append(word[:-1])
    if word.endswith("ied") and len(word) > 3:
        cands.append(word[:-3] + "y")
    if word.endswith("ed") and len(word) > 2:
        cands.append(word[:-2])
        cands.append(word[:-1])  # stored -> store
    if word.endswith("ing") and len(word) > 3:
        cands.append(word[:-3])
        cands.append(word[:-3] + "e")  # storing -> store
    return cands


class Tagger:
    """Memoized word-level decisions over a :class:`TagLexicon`.

    One lexicon consultation per distinct word, ever; ``invocations`` counts
    those consultations and is the run's tagging-cost metric.
    """

    def __init__(self, lexicon: TagLexicon):
        self.lexicon = lexicon
        self._memo: dict[str, tuple[bool, bool]] = {}
        self._lock = threading.Lock()
        self.invocations = 0

    def _decide(self, word: str) -> tuple[bool, bool]:
        """(is_noun, verb_plausible) for one lowercase word."""
        lex = self.lexicon
        forced = lex.overrides.get(word)
        tags = lex.tags(word)
        if forced is not None:
            is_noun = forced
        elif tags is None:
            is_noun = True  # out-of-vocabulary identifiers are mostly domain nouns
        else:
            is_noun = tags.get(NOUN, 0) >= max(tags.values())
        verbish = any(
            (t := lex.tags(c)) is not None and t.get(VERB, 0) > 0
            for c in inflection_candidates(word)
        )
        return is_noun, verbish

    def _analysis(self, word: str) -> tuple[bool, bool]:
        word = word.lower()
        with self._lock:
            hit = self._memo.get(word)
            if hit is not None:
                return hit
        decided = self._decide(word)
        with self._lock:
            # Another worker may have raced us; first insert wins.
            if word not in self._memo:
                self._memo[word] = decided
                self.invocations += 1
            return self._memo[word]

    def is_noun(self, word: str) -> bool:
        return self._analysis(word)[0]

    def verb_plausible(self, word: str) -> bool:
        return self._analysis(word)[1]

    def noun_units(self, name: str) -> frozenset[str]:
        """The noun sub-words of an identifier name."""
        return frozenset(w for w in split_name(name) if self.is_noun(w))


def unit_consistent(a: frozenset[str], b: frozenset[str]) -> bool:
    """Unit sets agree: equal, or at least one is empty."""
    return a == b or not a or not b


def edge_unit_ok(tagger: Tagger, edge, m1_name: str) -> bool:
    """Name-agreement gate for one candidate edge.

    Parameter-to-parameter edges need the two parameter names to agree.
    Parameter-to-return edges compare against the callee's method name, and
    also accept agreement between the two *method* names -- the storing
    API's own name may carry the units its parameter name lacks.
    """
    src = tagger.noun_units(edge.src.name_label)
    dst = tagger.noun_units(edge.dst.name_label)
    if edge.dst.index != -1:
        return unit_consistent(src, dst)
    return unit_consistent(src, dst) or unit_consistent(tagger.noun_units(m1_name), dst)

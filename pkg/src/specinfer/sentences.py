"""Sentence splitting and clause structure for API descriptions.

A description sentence is Simple (one independent clause), Compound
(independent clauses joined by a coordinating conjunction or semicolon) or
Complex (an independent clause plus a subordinated one).  Downstream
classification wants the independent simple clauses, because each of those
carries one action.

The splitter is rule based: fixed conjunction lists plus a verb-plausibility
check from the tag lexicon decide where clauses start.  It is deterministic
and total -- anything it cannot make sense of degrades to Simple -- and it
sits behind :class:`SentenceAnalyzer` so a parser-backed implementation
could replace it without touching callers.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .names import Tagger

__all__ = ["Structure", "Clause", "SentenceAnalysis", "SentenceAnalyzer", "split_sentences"]

COORDINATORS = {"for", "and", "nor", "but", "or", "yet", "so"}
SUBORDINATORS = {
    "if", "when", "because", "although", "unless", "while",
    "after", "before", "since", "whereas",
}
# Function words skipped when looking for a clause's first content word.
_SKIP = {
    "the", "a", "an", "this", "that", "these", "those", "its", "his", "her",
    "their", "your", "our", "my", "no", "any", "all", "each", "some",
    "it", "he", "she", "they", "we", "you", "i", "one",
    "also", "then", "always", "never", "only", "just", "not", "too",
    "often", "usually", "finally",
}
_PRONOUNS = {"it", "he", "she", "they", "we", "you", "i", "this", "these", "those"}

_OPENers = {"(": ")", "[": "]", "{": "}"}
_TOKEN_RE = re.compile(r"[A-Za-z0-9'’’-]+|[^\sA-Za-z0-9]")


def split_sentences(description: str) -> list[str]:
    """Split a description into sentences at ``.``/``!``/``?``.

    Terminators inside parentheses, brackets or double quotes do not split.
    Segments are trimmed and empty ones dropped.
    """
    out: list[str] = []
    depth = 0
    in_quote = False
    start = 0
    i = 0
    n = len(description)
    while i < n:
        ch = description[i]
        if ch == '"':
            in_quote = not in_quote
        elif ch in _OPENers:
            depth += 1
        elif ch in (")", "]", "}"):
            depth = max(0, depth - 1)
        elif ch in ".!?" and depth == 0 and not in_quote:
            while i + 1 < n and description[i + 1] in ".!?":
                i += 1
            segment = description[start : i + 1].strip()
            if segment:
                out.append(segment)
            start = i + 1
        i += 1
    tail = description[start:].strip()
    if tail:
        out.append(tail)
    return out


class Structure(enum.Enum):
    SIMPLE = "Simple"
    COMPOUND = "Compound"
    COMPLEX = "Complex"


@dataclass(frozen=True)
class Clause:
    text: str
    independent: bool


@dataclass(frozen=True)
class SentenceAnalysis:
    original: str
    structure: Structure
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class _Token:
    text: str
    start: int
    end: int

    @property
    def word(self) -> str:
        return self.text.lower()

    @property
    def is_word(self) -> bool:
        return bool(self.text) and (self.text[0].isalnum() or self.text[0] in "'’")


class SentenceAnalyzer:
    """Rule-based clause splitter over a shared :class:`Tagger`."""

    def __init__(self, tagger: Tagger):
        self.tagger = tagger

    # -- helpers ----------------------------------------------------------

    def _first_content_word(self, tokens: list[_Token]) -> str | None:
        for t in tokens:
            if t.is_word and t.word not in _SKIP:
                return t.word
        return None

    def _verb_bearing(self, tokens: list[_Token]) -> bool:
        word = self._first_content_word(tokens)
        return word is not None and self.tagger.verb_plausible(word)

    @staticmethod
    def _span_text(sentence: str, tokens: list[_Token]) -> str:
        if not tokens:
            return ""
        text = sentence[tokens[0].start : tokens[-1].end]
        return text.strip().strip(",;:.").strip()

    def _relativizer(self, tokens: list[_Token], i: int) -> bool:
        """Is ``which``/``that`` at position i introducing a clause?

        Heuristic: yes when the next word looks like a verb or a pronoun;
        ``that`` followed by a noun is a determiner ("that object").
        """
        nxt = next((t for t in tokens[i + 1 :] if t.is_word), None)
        if nxt is None:
            return False
        if nxt.word in _PRONOUNS:
            return True
        return self.tagger.verb_plausible(nxt.word) and not self.tagger.is_noun(nxt.word)

    # -- analysis ---------------------------------------------------------

    def analyze(self, sentence: str) -> SentenceAnalysis:
        """Classify one sentence and cut it into clauses."""
        tokens = [_Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(sentence)]
        words_present = any(t.is_word for t in tokens)
        if not words_present:
            return SentenceAnalysis(sentence, Structure.SIMPLE, (Clause(sentence.strip().strip(".!?").strip(), True),))

        compound = self._split_compound(sentence, tokens)
        if compound is not None:
            return SentenceAnalysis(sentence, Structure.COMPOUND, tuple(compound))

        complex_ = self._split_complex(sentence, tokens)
        if complex_ is not None:
            return SentenceAnalysis(sentence, Structure.COMPLEX, tuple(complex_))

        return SentenceAnalysis(sentence, Structure.SIMPLE, (Clause(self._span_text(sentence, tokens), True),))

    def _split_compound(self, sentence: str, tokens: list[_Token]) -> list[Clause] | None:
        spans: list[list[_Token]] = []
        seg_start = 0
        for i, tok in enumerate(tokens):
            if i == 0 or i == len(tokens) - 1:
                continue
            is_semi = tok.text == ";"
            is_coord = tok.is_word and tok.word in COORDINATORS
            if not (is_semi or is_coord):
                continue
            if tok.word == "so" and i + 1 < len(tokens) and tokens[i + 1].word == "that":
                continue  # subordinator, not a coordinator
            left = tokens[seg_start:i]
            right = tokens[i + 1 :]
            if self._verb_bearing(left) and self._verb_bearing(right):
                spans.append(left)
                seg_start = i + 1
        if not spans:
            return None
        spans.append(tokens[seg_start:])

        clauses = [self._span_text(sentence, span) for span in spans]
        # Copy clause 1's subject onto later clauses that start with a bare verb.
        first = spans[0]
        first_words = [t for t in first if t.is_word]
        subject = ""
        if first_words and not self.tagger.verb_plausible(first_words[0].word):
            for j, t in enumerate(first_words):
                if self.tagger.verb_plausible(t.word):
                    subject = self._span_text(sentence, first[: first.index(t)])
                    break
        out = [Clause(clauses[0], True)]
        for span, text in zip(spans[1:], clauses[1:]):
            lead = next((t for t in span if t.is_word), None)
            if subject and lead is not None and self.tagger.verb_plausible(lead.word):
                text = f"{subject} {text}"
            out.append(Clause(text, True))
        return out

    def _split_complex(self, sentence: str, tokens: list[_Token]) -> list[Clause] | None:
        words = [(i, t) for i, t in enumerate(tokens) if t.is_word]
        sub_at: tuple[int, int] | None = None  # (token index, token span length)
        for pos, (i, tok) in enumerate(words):
            w = tok.word
            if w == "so" and pos + 1 < len(words) and words[pos + 1][1].word == "that":
                sub_at = (i, 2)
                break
            if w in SUBORDINATORS:
                sub_at = (i, 1)
                break
            if w in ("that", "which") and self._relativizer(tokens, i):
                sub_at = (i, 1)
                break
        if sub_at is None:
            return None
        i, width = sub_at
        # Skip through the subordinator's tokens (handles "so that").
        j = i
        consumed = 0
        while j < len(tokens) and consumed < width:
            if tokens[j].is_word:
                consumed += 1
            j += 1
        if i == 0 or (words and words[0][0] == i):
            # Leading subordinate clause: "If X, Y."
            comma = next((k for k in range(j, len(tokens)) if tokens[k].text == ","), None)
            if comma is None or comma + 1 >= len(tokens):
                return None
            dependent = self._span_text(sentence, tokens[j:comma])
            independent = self._span_text(sentence, tokens[comma + 1 :])
            if not dependent or not independent:
                return None
            return [Clause(dependent, False), Clause(independent, True)]
        independent = self._span_text(sentence, tokens[:i])
        dependent = self._span_text(sentence, tokens[j:])
        if not dependent or not independent:
            return None
        return [Clause(independent, True), Clause(dependent, False)]

    def independent_simple_clauses(self, sentence: str, _depth: int = 0) -> list[str]:
        """Leaf clauses that carry the sentence's actions.

        Compound branches contribute all their clauses, complex ones only the
        independent clause; clauses are re-analyzed so compound-complex
        nesting unwinds.
        """
        analysis = self.analyze(sentence)
        if analysis.structure is Structure.SIMPLE or _depth >= 4:
            return [analysis.clauses[0].text] if analysis.clauses[0].text else []
        out: list[str] = []
        for clause in analysis.clauses:
            if not clause.independent:
                continue
            if clause.text == sentence:
                out.append(clause.text)
                continue
            out.extend(self.independent_simple_clauses(clause.text, _depth + 1))
        return out

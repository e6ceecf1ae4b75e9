"""Memory-operation classification of description sentences.

Each simple clause of a description is scored against four canonical
operation descriptors (insert / delete / read / write); the best-scoring
operation wins if it clears a minimum-similarity threshold, otherwise the
clause commits to nothing.  A whole description aggregates per its sentence
structure: compound clauses union, complex sentences keep only the
independent clause.

Two interchangeable scoring backends exist.  The bundled lexicon backend is
a deterministic verb-weight table keyed on the clause's main verb; the
embedding backend asks an HTTP embedding service for vectors and compares
them by cosine here.  Backends are wrapped in a memo so a (sentence,
descriptor) pair is never scored twice in a run.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Protocol

import requests

from .errors import BackendTransportError
from .names import Tagger, inflection_candidates
from .sentences import SentenceAnalyzer, split_sentences

__all__ = [
    "MemoryOp",
    "DEFAULT_DESCRIPTORS",
    "ClassifierConfig",
    "SimilarityBackend",
    "LexiconBackend",
    "EmbeddingBackend",
    "MemoizedBackend",
    "PersistentCacheBackend",
    "classify_sentence",
    "abstract_description",
    "memoized",
    "cosine",
    "load_verb_table",
    "bundled_verb_table",
]


class MemoryOp(enum.Enum):
    INSERT = "I"
    DELETE = "D"
    READ = "R"
    WRITE = "W"

    def __str__(self) -> str:
        return self.value


# Fixed order: classification tie-break and output ordering both use it.
OP_ORDER = (MemoryOp.INSERT, MemoryOp.DELETE, MemoryOp.READ, MemoryOp.WRITE)

DEFAULT_DESCRIPTORS: dict[MemoryOp, str] = {
    MemoryOp.READ: "Gets value of something.",
    MemoryOp.WRITE: "Sets value of something.",
    MemoryOp.INSERT: "Inserts something into a collection.",
    MemoryOp.DELETE: "Removes something from a collection.",
}


@dataclass(frozen=True)
class ClassifierConfig:
    backend: str = "lexicon"  # lexicon | embedding
    threshold: float = 0.35
    sentence_scope: str = "first"  # first | all
    descriptors: dict[MemoryOp, str] = field(default_factory=lambda: dict(DEFAULT_DESCRIPTORS))

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.backend not in ("lexicon", "embedding"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.sentence_scope not in ("first", "all"):
            raise ValueError(f"sentence scope must be 'first' or 'all', got {self.sentence_scope!r}")


class SimilarityBackend(Protocol):
    """Scores how well a sentence matches an operation descriptor."""

    model_id: str

    def score(self, sentence: str, descriptor: str) -> float: ...


def cosine(a: list[float], b: list[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


# -- lexicon backend --------------------------------------------------------


def load_verb_table(path: str | Path) -> dict[str, dict[MemoryOp, float]]:
    """Read a verb weight file: ``verb\\tI,D,R,W`` with reals in [0, 1]."""
    table: dict[str, dict[MemoryOp, float]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            verb, rest = line.split("\t", 1)
            weights = [float(x) for x in rest.split(",")]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed verb table line") from exc
        if len(weights) != 4 or any(not 0.0 <= w <= 1.0 for w in weights):
            raise ValueError(f"{path}:{lineno}: need four weights in [0, 1]")
        table[verb.strip().lower()] = dict(zip(OP_ORDER, weights))
    return table


def bundled_verb_table() -> dict[str, dict[MemoryOp, float]]:
    with resources.as_file(resources.files("specinfer") / "data" / "verb_ops.txt") as p:
        return load_verb_table(p)


class LexiconBackend:
    """Deterministic verb-table scoring.

    The clause's main verb is the first word the tag lexicon considers
    plausibly a verb (description sentences lead with the verb); its weight
    row gives the four scores.  Verbs absent from the table score 0.
    """

    def __init__(
        self,
        verb_table: dict[str, dict[MemoryOp, float]],
        tagger: Tagger,
        descriptors: dict[MemoryOp, str] | None = None,
    ):
        self._table = verb_table
        self._tagger = tagger
        descs = descriptors or DEFAULT_DESCRIPTORS
        self._op_of = {text: op for op, text in descs.items()}
        digest = hashlib.sha256(
            json.dumps({v: {op.value: w for op, w in row.items()} for v, row in sorted(verb_table.items())}).encode()
        ).hexdigest()[:12]
        self.model_id = f"lexicon:{digest}"

    def _main_verb(self, sentence: str) -> str | None:
        for word in sentence.split():
            word = word.strip(".,;:!?()\"'").lower()
            if word and self._tagger.verb_plausible(word):
                return word
        return None

    def _weights(self, verb: str) -> dict[MemoryOp, float] | None:
        for candidate in inflection_candidates(verb):
            row = self._table.get(candidate)
            if row is not None:
                return row
        return None

    def score(self, sentence: str, descriptor: str) -> float:
        op = self._op_of.get(descriptor)
        if op is None:
            raise ValueError(f"descriptor not registered with this backend: {descriptor!r}")
        verb = self._main_verb(sentence)
        if verb is None:
            return 0.0
        row = self._weights(verb)
        return row[op] if row is not None else 0.0


# -- embedding backend -------------------------------------------------------


class EmbeddingBackend:
    """Scores by cosine over vectors fetched from the embedding service.

    Vectors are cached per text, so descriptors are embedded once per run.
    Batched requests are supported via :meth:`prefetch`.
    """

    def __init__(self, url: str, batch_size: int = 64, timeout: float = 60.0):
        self.url = url.rstrip("/")
        self.batch_size = max(1, batch_size)
        self.timeout = timeout
        self._session = requests.Session()
        self._vectors: dict[str, list[float]] = {}
        self._lock = threading.Lock()
        self.model_id = f"embedding:{self._fetch_model_name()}"

    def _fetch_model_name(self) -> str:
        try:
            resp = self._session.get(f"{self.url}/health", timeout=self.timeout)
            resp.raise_for_status()
            return str(resp.json().get("model", "unknown"))
        except requests.RequestException as exc:
            raise BackendTransportError(f"embedding service unreachable at {self.url}: {exc}") from exc

    def _embed(self, texts: list[str]) -> None:
        for start in range(0, len(texts), self.batch_size):
            chunk = texts[start : start + self.batch_size]
            try:
                resp = self._session.post(
                    f"{self.url}/v1/embed",
                    json={"texts": chunk, "normalize": True},
                    timeout=self.timeout,
                )
                resp.raise_for_status()
                vectors = resp.json()["vectors"]
            except (requests.RequestException, KeyError, ValueError) as exc:
                raise BackendTransportError(f"embedding request failed: {exc}") from exc
            if len(vectors) != len(chunk):
                raise BackendTransportError(
                    f"embedding service returned {len(vectors)} vectors for {len(chunk)} texts"
                )
            with self._lock:
                for text, vec in zip(chunk, vectors):
                    self._vectors[text] = [float(x) for x in vec]

    def prefetch(self, texts: list[str]) -> None:
        with self._lock:
            missing = [t for t in dict.fromkeys(texts) if t not in self._vectors]
        if missing:
            self._embed(missing)

    def _vector(self, text: str) -> list[float]:
        with self._lock:
            vec = self._vectors.get(text)
        if vec is None:
            self._embed([text])
            vec = self._vectors[text]
        return vec

    def score(self, sentence: str, descriptor: str) -> float:
        return cosine(self._vector(sentence), self._vector(descriptor))


# -- memoization --------------------------------------------------------------


class MemoizedBackend:
    """Score each distinct (sentence, descriptor) pair at most once per run."""

    def __init__(self, inner: SimilarityBackend):
        self.inner = inner
        self.model_id = inner.model_id
        self._cache: dict[tuple[str, str], float] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def score(self, sentence: str, descriptor: str) -> float:
        key = (sentence, descriptor)
        with self._lock:
            if key in self._cache:
                self.hits += 1
                return self._cache[key]
        value = self.inner.score(sentence, descriptor)
        with self._lock:
            if key not in self._cache:
                self._cache[key] = value
                self.misses += 1
            else:
                self.hits += 1
            return self._cache[key]


def memoized(backend: SimilarityBackend) -> MemoizedBackend:
    return MemoizedBackend(backend)


class PersistentCacheBackend:
    """Disk cache keyed on sha256(model id + sentence + descriptor)."""

    def __init__(self, inner: SimilarityBackend, cache_dir: str | Path):
        self.inner = inner
        self.model_id = inner.model_id
        self.dir = Path(cache_dir)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, sentence: str, descriptor: str) -> Path:
        digest = hashlib.sha256(
            b"\x00".join(s.encode("utf-8") for s in (self.model_id, sentence, descriptor))
        ).hexdigest()
        return self.dir / f"{digest}.json"

    def score(self, sentence: str, descriptor: str) -> float:
        path = self._path(sentence, descriptor)
        if path.exists():
            try:
                return float(json.loads(path.read_text(encoding="utf-8"))["score"])
            except (ValueError, KeyError, OSError):
                pass  # corrupt entry: recompute and overwrite
        value = self.inner.score(sentence, descriptor)
        # Unique temp file per write: concurrent workers may race on one key.
        fd, tmp_name = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"score": value}))
        os.replace(tmp_name, path)
        return value

    @staticmethod
    def clear(cache_dir: str | Path) -> int:
        """Remove all cache entries; returns how many were deleted."""
        root = Path(cache_dir)
        if not root.is_dir():
            return 0
        removed = 0
        for p in root.glob("*.json"):
            p.unlink()
            removed += 1
        for p in root.glob("*.tmp"):
            p.unlink()
        return removed


# -- classification -----------------------------------------------------------


def classify_sentence(
    backend: SimilarityBackend,
    cfg: ClassifierConfig,
    sentence: str,
) -> tuple[MemoryOp | None, dict[MemoryOp, float]]:
    """Score one simple clause against all four descriptors.

    Returns the best operation if its score clears the threshold, else None;
    ties go to the earliest operation in I, D, R, W order.  All four scores
    come back for reporting either way.
    """
    scores = {op: backend.score(sentence, cfg.descriptors[op]) for op in OP_ORDER}
    best = max(OP_ORDER, key=lambda op: scores[op])  # max() keeps the first of ties
    if scores[best] >= cfg.threshold:
        return best, scores
    return None, scores


def abstract_description(
    backend: SimilarityBackend,
    cfg: ClassifierConfig,
    analyzer: SentenceAnalyzer,
    description: str,
) -> frozenset[MemoryOp]:
    """The set of memory operations a description implies."""
    sentences = split_sentences(description)
    if cfg.sentence_scope == "first":
        sentences = sentences[:1]
    ops: set[MemoryOp] = set()
    for sentence in sentences:
        for clause in analyzer.independent_simple_clauses(sentence):
            op, _ = classify_sentence(backend, cfg, clause)
            if op is not None:
                ops.add(op)
    return frozenset(ops)

"""Infer library API aliasing and data-flow specifications from documentation."""

from .docmodel import (
    DocumentationModel,
    MethodDoc,
    MethodId,
    TypeName,
    load_canonical,
    resolve_universe,
    save_canonical,
    type_consistent,
)
from .graph import ApiValueGraph, ApiValueNode, CandidateEdge, EdgeKind, build_graph
from .inference import (
    AliasSpecification,
    ClassInferenceResult,
    DataFlowSummary,
    InferenceEngine,
    PairVerdict,
    Stage,
    Stats,
    convert,
    emit_dataflow,
)
from .matching import solve_matching
from .memop import (
    ClassifierConfig,
    DEFAULT_DESCRIPTORS,
    EmbeddingBackend,
    LexiconBackend,
    MemoizedBackend,
    MemoryOp,
    abstract_description,
    classify_sentence,
    memoized,
)
from .names import TagLexicon, Tagger, bundled_lexicon, split_name, unit_consistent
from .sentences import SentenceAnalysis, SentenceAnalyzer, Structure, split_sentences

__version__ = "0.1.0"

"""Command-line interface.

Subcommands: ``infer`` (the pipeline), ``ingest-javadoc`` (HTML -> canonical
JSON), ``graph`` / ``sentence`` / ``classify`` (debug views of the three
analysis layers), ``eval`` (score against ground truth) and ``cache clear``.
Exit status: 0 success, 1 fatal, 2 partial results with per-class errors.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import evaluate
from .docmodel import DocumentationModel, load_canonical, save_canonical
from .errors import SpecinferError
from .graph import build_graph
from .inference import InferenceEngine, Stats, specs_to_json_dict, summaries_to_json_dict
from .javadoc import ingest_javadoc_html
from .memop import (
    ClassifierConfig,
    EmbeddingBackend,
    LexiconBackend,
    MemoizedBackend,
    OP_ORDER,
    PersistentCacheBackend,
    bundled_verb_table,
    classify_sentence,
    load_verb_table,
)
from .names import Tagger, bundled_lexicon, load_lexicon, load_overrides
from .sentences import SentenceAnalyzer

DEFAULT_EMBED_URL = "http://127.0.0.1:8876"


@dataclass
class RunConfig:
    docs: Path
    class_glob: str | None = None
    backend: str = "lexicon"
    embed_url: str = ""
    threshold: float = 0.35
    sentence_scope: str = "first"
    jobs: int = 1
    cache_dir: Path | None = None
    out_dir: Path = Path("out")
    lexicon_path: Path | None = None
    overrides_path: Path | None = None
    verb_table_path: Path | None = None
    include_self_pairs: bool = False
    lazy: bool = True
    box_primitives: bool = False
    errors: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.docs.is_file():
            self.errors.append(f"docs file not found: {self.docs}")
        if self.backend not in ("lexicon", "embedding"):
            self.errors.append(f"unknown backend: {self.backend}")
        if not 0.0 <= self.threshold <= 1.0:
            self.errors.append(f"threshold must be in [0, 1]: {self.threshold}")
        if self.sentence_scope not in ("first", "all"):
            self.errors.append(f"sentence scope must be first|all: {self.sentence_scope}")
        if self.jobs < 1:
            self.errors.append(f"jobs must be >= 1: {self.jobs}")
        for label, path in (
            ("lexicon", self.lexicon_path),
            ("noun-overrides", self.overrides_path),
            ("verb-lexicon", self.verb_table_path),
        ):
            if path is not None and not path.is_file():
                self.errors.append(f"{label} file not found: {path}")
        if self.errors:
            raise SpecinferError("invalid configuration:\n  " + "\n  ".join(self.errors))


def _build_tagger(cfg: RunConfig) -> Tagger:
    if cfg.lexicon_path is not None:
        overrides = load_overrides(cfg.overrides_path) if cfg.overrides_path else {}
        return Tagger(load_lexicon(cfg.lexicon_path, overrides))
    lexicon = bundled_lexicon()
    if cfg.overrides_path is not None:
        lexicon.overrides.clear()
        lexicon.overrides.update(load_overrides(cfg.overrides_path))
    return Tagger(lexicon)


def _build_backend(cfg: RunConfig, tagger: Tagger) -> MemoizedBackend:
    if cfg.backend == "embedding":
        inner = EmbeddingBackend(cfg.embed_url or DEFAULT_EMBED_URL)
    else:
        table = load_verb_table(cfg.verb_table_path) if cfg.verb_table_path else bundled_verb_table()
        inner = LexiconBackend(table, tagger)
    if cfg.cache_dir is not None:
        inner = PersistentCacheBackend(inner, cfg.cache_dir)
    return MemoizedBackend(inner)


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _filtered_classes(model: DocumentationModel, glob: str | None) -> list[str]:
    names = model.class_names()
    if glob:
        names = [n for n in names if fnmatch.fnmatchcase(n, glob)]
    return names


def cmd_infer(cfg: RunConfig) -> int:
    cfg.validate()
    model = load_canonical(cfg.docs)
    tagger = _build_tagger(cfg)
    backend = _build_backend(cfg, tagger)
    classifier = ClassifierConfig(
        backend=cfg.backend, threshold=cfg.threshold, sentence_scope=cfg.sentence_scope
    )
    engine = InferenceEngine(
        model,
        tagger,
        backend,
        classifier,
        include_self_pairs=cfg.include_self_pairs,
        lazy=cfg.lazy,
        box_primitives=cfg.box_primitives,
    )

    all_specs = []
    all_summaries = []
    totals = Stats()
    errors: list[str] = []
    for class_name in _filtered_classes(model, cfg.class_glob):
        result = engine.infer_class(class_name, jobs=cfg.jobs)
        all_specs.extend(result.specs)
        all_summaries.extend(result.summaries)
        errors.extend(result.errors)
        totals.tagging_invocations += result.stats.tagging_invocations
        totals.backend_items += result.stats.backend_items
        totals.pairs_total += result.stats.pairs_total
        totals.pairs_pruned_type += result.stats.pairs_pruned_type
        totals.pairs_pruned_units += result.stats.pairs_pruned_units
        totals.pairs_pruned_memop += result.stats.pairs_pruned_memop
        totals.specs_emitted += result.stats.specs_emitted
        totals.wall_time += result.stats.wall_time

    all_specs.sort(key=lambda s: s.sort_key())
    all_summaries.sort(key=lambda s: (s.method.class_name, s.method.signature))
    _write_json(cfg.out_dir / "specs.json", specs_to_json_dict(all_specs))
    _write_json(cfg.out_dir / "dataflow.json", summaries_to_json_dict(all_summaries))
    _write_json(cfg.out_dir / "stats.json", totals.to_json_dict())
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    return 2 if errors else 0


def cmd_ingest(args: argparse.Namespace) -> int:
    result = ingest_javadoc_html(args.dir)
    save_canonical(result.model, args.output)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"ingested {len(result.model.classes)} classes -> {args.output} ({len(result.warnings)} warnings)")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    model = load_canonical(args.docs)
    g = build_graph(model, args.class_name, box_primitives=args.box_primitives)
    for node in g.nodes:
        slot = "ret" if node.is_return else f"p{node.index}"
        print(f"node {node.method.signature} {slot} type={node.type.raw} name={node.name_label}")
    methods = sorted(g.universe, key=lambda m: m.id.signature)
    for a in methods:
        for b in methods:
            if a.id == b.id:
                continue
            edges = g.candidate_edges(a.id, b.id)
            if edges:
                print(f"pair {a.id.signature} -> {b.id.signature}: {len(edges)} candidate edges")
    return 0


def cmd_sentence(args: argparse.Namespace) -> int:
    analyzer = SentenceAnalyzer(Tagger(bundled_lexicon()))
    analysis = analyzer.analyze(args.text)
    print(f"structure: {analysis.structure.value}")
    for clause in analysis.clauses:
        marker = "independent" if clause.independent else "dependent"
        print(f"  [{marker}] {clause.text}")
    return 0


def cmd_classify(cfg: RunConfig, text: str) -> int:
    tagger = _build_tagger(cfg)
    backend = _build_backend(cfg, tagger)
    classifier = ClassifierConfig(
        backend=cfg.backend, threshold=cfg.threshold, sentence_scope=cfg.sentence_scope
    )
    op, scores = classify_sentence(backend, classifier, text)
    for candidate in OP_ORDER:
        print(f"{candidate.value}: {scores[candidate]:.4f}")
    print(f"op: {op.value if op else 'none'}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    if args.kind == "dataflow":
        metrics = evaluate.compare_dataflow(
            evaluate.load_dataflow_file(args.pred), evaluate.load_dataflow_file(args.truth)
        )
    else:
        metrics = evaluate.compare_alias(
            evaluate.load_alias_file(args.pred), evaluate.load_alias_file(args.truth), mode=args.mode
        )
    print(json.dumps(metrics.to_json_dict(), indent=2))
    return 0


def cmd_cache_clear(args: argparse.Namespace) -> int:
    cache_dir = args.memop_cache or os.environ.get("SPECINFER_CACHE_DIR")
    if not cache_dir:
        print("no cache directory given (--memop-cache or SPECINFER_CACHE_DIR)", file=sys.stderr)
        return 1
    removed = PersistentCacheBackend.clear(cache_dir)
    print(f"removed {removed} cache entries from {cache_dir}")
    return 0


def _add_engine_flags(p: argparse.ArgumentParser, *, needs_docs: bool = True) -> None:
    if needs_docs:
        p.add_argument("--docs", required=True, type=Path, help="canonical documentation JSON file")
        p.add_argument("--class", dest="class_glob", default=None, help="glob filter on class names")
    p.add_argument("--backend", choices=["lexicon", "embedding"], default="lexicon")
    p.add_argument("--embed-url", default=os.environ.get("SPECINFER_EMBED_URL", ""), help="embedding service URL")
    p.add_argument("--threshold", type=float, default=0.35, help="minimum similarity for an operation")
    p.add_argument("--sentences", choices=["first", "all"], default="first", help="description sentences to classify")
    p.add_argument("--lexicon", type=Path, default=None, help="tag-frequency lexicon file")
    p.add_argument("--noun-overrides", type=Path, default=None, help="forced-noun override file")
    p.add_argument("--verb-lexicon", type=Path, default=None, help="verb weight table for the lexicon backend")
    p.add_argument("--memop-cache", type=Path, default=None, help="persistent score cache directory")


def _run_config(args: argparse.Namespace, *, needs_docs: bool = True) -> RunConfig:
    cache_env = os.environ.get("SPECINFER_CACHE_DIR")
    return RunConfig(
        docs=getattr(args, "docs", Path(os.devnull)) if needs_docs else Path(os.devnull),
        class_glob=getattr(args, "class_glob", None),
        backend=args.backend,
        embed_url=args.embed_url,
        threshold=args.threshold,
        sentence_scope=args.sentences,
        jobs=getattr(args, "jobs", 1),
        cache_dir=args.memop_cache or (Path(cache_env) if cache_env else None),
        out_dir=getattr(args, "output", Path("out")),
        lexicon_path=args.lexicon,
        overrides_path=args.noun_overrides,
        verb_table_path=args.verb_lexicon,
        include_self_pairs=getattr(args, "include_self_pairs", False),
        lazy=not getattr(args, "no_lazy", False),
        box_primitives=getattr(args, "box_primitives", False),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specinfer",
        description="Infer library API aliasing and data-flow specifications from documentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="run the full inference pipeline")
    _add_engine_flags(p)
    p.add_argument("-o", "--output", type=Path, default=Path("out"), help="output directory")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker threads per class")
    p.add_argument("--include-self-pairs", action="store_true", help="also pair a method with itself")
    p.add_argument("--no-lazy", action="store_true", help="run the NLP stages for every pair (debug)")
    p.add_argument("--box-primitives", action="store_true", help="treat primitives as their boxed types")
    p.set_defaults(run=lambda a: cmd_infer(_run_config(a)))

    p = sub.add_parser("ingest-javadoc", help="convert Javadoc HTML pages to the canonical format")
    p.add_argument("--dir", required=True, type=Path, help="directory of per-class HTML pages")
    p.add_argument("-o", "--output", required=True, type=Path, help="canonical JSON output path")
    p.set_defaults(run=cmd_ingest)

    p = sub.add_parser("graph", help="dump value nodes and candidate edge counts for a class")
    p.add_argument("--docs", required=True, type=Path)
    p.add_argument("--class", dest="class_name", required=True)
    p.add_argument("--box-primitives", action="store_true")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("sentence", help="show the clause analysis of one sentence")
    p.add_argument("--text", required=True)
    p.set_defaults(run=cmd_sentence)

    p = sub.add_parser("classify", help="classify one clause into a memory operation")
    p.add_argument("--text", required=True)
    _add_engine_flags(p, needs_docs=False)
    p.set_defaults(run=lambda a: cmd_classify(_run_config(a, needs_docs=False), a.text))

    p = sub.add_parser("eval", help="score predictions against a ground-truth file")
    p.add_argument("--pred", required=True, type=Path)
    p.add_argument("--truth", required=True, type=Path)
    p.add_argument("--mode", choices=["exact", "relaxed"], default="exact")
    p.add_argument("--kind", choices=["alias", "dataflow"], default="alias")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("cache", help="manage persistent caches")
    cache_sub = p.add_subparsers(dest="cache_command", required=True)
    pc = cache_sub.add_parser("clear", help="delete all persistent score cache entries")
    pc.add_argument("--memop-cache", type=Path, default=None)
    pc.set_defaults(run=cmd_cache_clear)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except SpecinferError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

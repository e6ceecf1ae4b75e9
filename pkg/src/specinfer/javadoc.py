"""Best-effort ingestion of Javadoc-style per-class HTML pages.

Supported layout (the classic per-class page):

* a ``<div class="subTitle">`` holding the package name,
* a ``<pre>`` class declaration (``public class Intent extends ...``),
* a summary table whose caption contains "Method Summary", one row per
  method: return type in the first cell, ``name(type arg, ...)`` plus a
  ``<div class="block">`` description in the second.

Anything the parser cannot make sense of is skipped and recorded as a
warning rather than failing the whole ingestion; pages without a method
summary table skip the class the same way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path

from .docmodel import ClassDoc, DocumentationModel, MethodDoc, MethodId, TypeName
from .errors import DocParseError

__all__ = ["IngestResult", "ingest_javadoc_html", "parse_class_page"]

_MODIFIERS = {
    "public", "protected", "private", "static", "final", "abstract",
    "default", "synchronized", "native", "strictfp",
}
_HEADER_LABELS = {"modifier and type", "method", "description", "method and description", "methods"}


@dataclass
class IngestResult:
    model: DocumentationModel
    warnings: list[str] = field(default_factory=list)


@dataclass
class _Cell:
    sig: list[str] = field(default_factory=list)
    block: list[str] = field(default_factory=list)
    deprecated: bool = False

    @property
    def sig_text(self) -> str:
        return _squash(" ".join(self.sig))

    @property
    def block_text(self) -> str:
        return _squash(" ".join(self.block))


def _squash(text: str) -> str:
    return re.sub(r"\s+", " ", text.replace("\xa0", " ")).strip()


class _ClassPage(HTMLParser):
    """Collects the declaration, subtitles and summary tables of one page."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.pres: list[list[str]] = []
        self.subtitles: list[list[str]] = []
        self.tables: list[dict] = []
        self._pre: list[str] | None = None
        self._subtitle: list[str] | None = None
        self._table: dict | None = None
        self._row: list[_Cell] | None = None
        self._cell: _Cell | None = None
        self._caption = False
        self._block_depth = 0

    def handle_starttag(self, tag, attrs):
        cls = dict(attrs).get("class", "")
        if tag == "pre":
            self._pre = []
            self.pres.append(self._pre)
        elif tag == "div" and "subtitle" in cls.lower() and self._table is None:
            self._subtitle = []
            self.subtitles.append(self._subtitle)
        elif tag == "table":
            self._table = {"caption": [], "rows": []}
            self.tables.append(self._table)
        elif tag == "caption" and self._table is not None:
            self._caption = True
        elif tag == "tr" and self._table is not None:
            self._row = []
            self._table["rows"].append(self._row)
        elif tag in ("td", "th") and self._row is not None:
            self._cell = _Cell()
            self._row.append(self._cell)
            self._block_depth = 0
        elif self._cell is not None:
            if tag == "div" and ("block" in cls or self._block_depth > 0):
                self._block_depth += 1
            elif tag == "div" and self._block_depth > 0:
                self._block_depth += 1
            if "deprecat" in cls.lower():
                self._cell.deprecated = True

    def handle_endtag(self, tag):
        if tag == "pre":
            self._pre = None
        elif tag == "div":
            if self._subtitle is not None and self._table is None:
                self._subtitle = None
            if self._block_depth > 0:
                self._block_depth -= 1
        elif tag == "table":
            self._table = None
        elif tag == "caption":
            self._caption = False
        elif tag == "tr":
            self._row = None
            self._cell = None
        elif tag in ("td", "th"):
            self._cell = None

    def handle_data(self, data):
        if self._pre is not None:
            self._pre.append(data)
        elif self._caption and self._table is not None:
            self._table["caption"].append(data)
        elif self._cell is not None:
            (self._cell.block if self._block_depth > 0 else self._cell.sig).append(data)
        elif self._subtitle is not None:
            self._subtitle.append(data)


def _strip_generics(name: str) -> str:
    return name.split("<", 1)[0].strip()


def _normalize_type(text: str) -> str:
    """Collapse whitespace inside a type expression ("ArrayList <String >")."""
    text = _squash(text)
    return re.sub(r"\s*([<>,])\s*", r"\1", text)


def _split_top_level(params: str) -> list[str]:
    out: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in params:
        if ch in "<([":
            depth += 1
        elif ch in ">)]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(current))
            current = []
        else:
            current.append(ch)
    if "".join(current).strip():
        out.append("".join(current))
    return out


def _parse_signature(text: str) -> tuple[str, list[tuple[str, str]]]:
    open_paren = text.find("(")
    close_paren = text.rfind(")")
    if open_paren < 0 or close_paren < open_paren:
        raise ValueError(f"no method signature in {text!r}")
    name = text[:open_paren].strip().split()[-1]
    if not re.fullmatch(r"[A-Za-z_$][\w$]*", name):
        raise ValueError(f"bad method name in {text!r}")
    params: list[tuple[str, str]] = []
    for part in _split_top_level(text[open_paren + 1 : close_paren]):
        pieces = _squash(part).rsplit(" ", 1)
        if len(pieces) != 2 or not pieces[0] or not pieces[1]:
            raise ValueError(f"bad parameter {part!r} in {text!r}")
        params.append((_normalize_type(pieces[0]), pieces[1]))
    return name, params


def _parse_return_type(text: str) -> str:
    text = _squash(text)
    if text.startswith("<"):  # generic method type parameters: drop the group
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "<"
            depth -= ch == ">"
            if depth == 0:
                text = text[i + 1 :].strip()
                break
    words = [w for w in text.split() if w not in _MODIFIERS]
    if not words:
        raise ValueError(f"no return type in {text!r}")
    return _normalize_type(" ".join(words))


def parse_class_page(html: str, origin: str = "<page>") -> tuple[ClassDoc, list[str]]:
    """Extract one class's documentation from a page; raises ValueError when
    the page has no class declaration or no method summary table."""
    page = _ClassPage()
    page.feed(html)

    decl = next(((_squash(" ".join(p))) for p in page.pres if re.search(r"\b(class|interface)\b", _squash(" ".join(p)))), None)
    if decl is None:
        raise ValueError(f"{origin}: no class declaration found")
    m = re.search(r"\b(?:class|interface)\s+([\w$]+)", decl)
    if m is None:
        raise ValueError(f"{origin}: unparseable class declaration {decl!r}")
    simple_name = m.group(1)
    package = next(
        (s for s in (_squash(" ".join(t)) for t in page.subtitles) if re.fullmatch(r"[a-zA-Z_][\w.]*", s)),
        "",
    )
    fqcn = f"{package}.{simple_name}" if package else simple_name

    supers: list[str] = []
    ext = re.search(r"\bextends\s+(.+?)(?:\bimplements\b|$)", decl)
    if ext:
        supers = [_strip_generics(s) for s in _split_top_level(ext.group(1)) if _strip_generics(s)]

    table = next(
        (t for t in page.tables if "method summary" in _squash(" ".join(t["caption"])).lower()),
        None,
    )
    if table is None:
        raise ValueError(f"{origin}: no method summary table")

    methods: list[MethodDoc] = []
    warnings: list[str] = []
    for row in table["rows"]:
        cells = [c for c in row if c.sig_text or c.block_text]
        if not cells:
            continue
        texts = [c.sig_text.lower() for c in cells]
        if all(t in _HEADER_LABELS or not t for t in texts):
            continue  # header row
        try:
            if len(cells) < 2:
                raise ValueError("row has fewer than two cells")
            sig_cell = cells[1]
            desc_cell = cells[2] if len(cells) > 2 and not sig_cell.block_text else sig_cell
            name, params = _parse_signature(sig_cell.sig_text)
            return_type = _parse_return_type(cells[0].sig_text)
        except ValueError as exc:
            warnings.append(f"{origin}: skipped method row: {exc}")
            continue
        description = desc_cell.block_text
        deprecated = any(c.deprecated for c in cells) or description.startswith("Deprecated")
        methods.append(
            MethodDoc(
                id=MethodId(fqcn, name, tuple(TypeName(t) for t, _ in params)),
                return_type=TypeName(return_type),
                param_names=tuple(n for _, n in params),
                description=description,
                deprecated=deprecated,
                declared_in=fqcn,
            )
        )
    return ClassDoc(name=fqcn, superclasses=tuple(supers), methods=tuple(methods)), warnings


def ingest_javadoc_html(directory: str | Path) -> IngestResult:
    """Ingest every ``*.html`` page under ``directory`` (sorted, recursive)."""
    root = Path(directory)
    if not root.is_dir():
        raise DocParseError(f"not a readable directory: {directory}")
    classes: dict[str, ClassDoc] = {}
    warnings: list[str] = []
    pages = sorted(p for p in root.rglob("*.htm*") if p.is_file())
    for path in pages:
        try:
            html = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            warnings.append(f"{path}: unreadable: {exc}")
            continue
        try:
            cls, page_warnings = parse_class_page(html, origin=str(path))
        except ValueError as exc:
            warnings.append(f"class skipped: {exc}")
            continue
        warnings.extend(page_warnings)
        if cls.name in classes:
            warnings.append(f"{path}: duplicate class {cls.name}, keeping the first page")
            continue
        classes[cls.name] = cls
    model = DocumentationModel(classes=classes)
    model.validate()
    return IngestResult(model=model, warnings=warnings)

"""Documentation model: class hierarchy, type signatures, names and descriptions.

The model is an immutable snapshot of what a library's documentation says:
per class, its superclasses and its methods (signature, parameter names,
description text, deprecation flag).  It is loaded from a canonical JSON
file (see :func:`load_canonical`) or produced by the Javadoc ingester, and
answers the two structural queries the rest of the pipeline needs:

* :func:`resolve_universe` -- the methods available on a class, including
  inherited ones, with shadowing and deprecation applied.
* :func:`type_consistent` -- whether two type names could possibly refer to
  the same object, judged by string equality, generic erasure, or the
  documented subclass relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import DocParseError, DocValidationError, UnknownClassError

__all__ = [
    "TypeName",
    "MethodId",
    "MethodDoc",
    "ClassDoc",
    "DocumentationModel",
    "load_canonical",
    "save_canonical",
    "resolve_universe",
    "type_consistent",
    "BOXED_PRIMITIVES",
]

VOID = "void"

# Fixed boxing table used only under the box-primitives option.
BOXED_PRIMITIVES = {
    "boolean": "java.lang.Boolean",
    "byte": "java.lang.Byte",
    "char": "java.lang.Character",
    "short": "java.lang.Short",
    "int": "java.lang.Integer",
    "long": "java.lang.Long",
    "float": "java.lang.Float",
    "double": "java.lang.Double",
}


@dataclass(frozen=True)
class TypeName:
    """A type as written in documentation, plus its generic erasure."""

    raw: str

    def __post_init__(self):
        if not self.raw:
            raise ValueError("type name must be non-empty")

    @property
    def erased(self) -> str:
        """The raw name truncated at the first generic argument list."""
        cut = self.raw.find("<")
        return self.raw if cut < 0 else self.raw[:cut]

    @property
    def is_void(self) -> bool:
        return self.raw == VOID

    def __str__(self) -> str:
        return self.raw


@dataclass(frozen=True)
class MethodId:
    """Identifies one API within a class; parameter types disambiguate overloads."""

    class_name: str
    method_name: str
    param_types: tuple[TypeName, ...]

    @property
    def signature(self) -> str:
        """``name(type,...)`` -- the stable textual form used in outputs."""
        return f"{self.method_name}({','.join(t.raw for t in self.param_types)})"

    def __str__(self) -> str:
        return f"{self.class_name}.{self.signature}"


@dataclass(frozen=True)
class MethodDoc:
    """Everything the documentation records about one method."""

    id: MethodId
    return_type: TypeName
    param_names: tuple[str, ...]
    description: str
    deprecated: bool = False
    declared_in: str = ""

    def __post_init__(self):
        if len(self.param_names) != len(self.id.param_types):
            raise DocValidationError(
                f"{self.id}: {len(self.param_names)} parameter names "
                f"for {len(self.id.param_types)} parameter types"
            )

    @property
    def arity(self) -> int:
        return len(self.param_names)


@dataclass(frozen=True)
class ClassDoc:
    name: str
    superclasses: tuple[str, ...]
    methods: tuple[MethodDoc, ...]


@dataclass(frozen=True)
class DocumentationModel:
    """Immutable set of documented classes; safe to share across workers."""

    classes: dict[str, ClassDoc] = field(default_factory=dict)

    def class_names(self) -> list[str]:
        return sorted(self.classes)

    def superclasses_of(self, class_name: str) -> list[str]:
        """Transitive superclasses of ``class_name``, nearest first.

        Names that are mentioned in a superclass list but not documented in
        the model still appear in the walk as opaque leaves.
        """
        seen: list[str] = []
        queue = list(self.classes[class_name].superclasses) if class_name in self.classes else []
        while queue:
            sup = queue.pop(0)
            if sup == class_name or sup in seen:
                continue
            seen.append(sup)
            if sup in self.classes:
                queue.extend(self.classes[sup].superclasses)
        return seen

    def validate(self) -> None:
        """Check hierarchy acyclicity; raises :class:`DocValidationError`."""
        for name, cls in self.classes.items():
            seen: set[str] = set()
            queue = list(cls.superclasses)
            while queue:
                sup = queue.pop()
                if sup == name:
                    raise DocValidationError(f"hierarchy cycle through class {name}")
                if sup in seen:
                    continue
                seen.add(sup)
                if sup in self.classes:
                    queue.extend(self.classes[sup].superclasses)


def _require(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise DocParseError(f"{where}: {what}")


def _parse_method(class_name: str, entry: object) -> MethodDoc:
    where = f"class {class_name}"
    _require(isinstance(entry, dict), where, "method entry is not an object")
    name = entry.get("name")
    _require(isinstance(name, str) and bool(name), where, "method without a name")
    where = f"{class_name}.{name}"
    ret = entry.get("returnType")
    _require(isinstance(ret, str) and bool(ret), where, "missing returnType")
    params = entry.get("params", [])
    _require(isinstance(params, list), where, "params is not a list")
    ptypes: list[TypeName] = []
    pnames: list[str] = []
    for i, p in enumerate(params):
        _require(isinstance(p, dict), where, f"param {i} is not an object")
        _require(isinstance(p.get("name"), str) and bool(p["name"]), where, f"param {i} missing name")
        _require(isinstance(p.get("type"), str) and bool(p["type"]), where, f"param {i} missing type")
        pnames.append(p["name"])
        ptypes.append(TypeName(p["type"]))
    desc = entry.get("description", "")
    _require(isinstance(desc, str), where, "description is not a string")
    deprecated = entry.get("deprecated", False)
    _require(isinstance(deprecated, bool), where, "deprecated is not a boolean")
    return MethodDoc(
        id=MethodId(class_name, name, tuple(ptypes)),
        return_type=TypeName(ret),
        param_names=tuple(pnames),
        description=desc,
        deprecated=deprecated,
        declared_in=class_name,
    )


def model_from_dict(payload: object) -> DocumentationModel:
    """Build and validate a model from already-parsed canonical JSON."""
    _require(isinstance(payload, dict), "document", "top level is not an object")
    classes_raw = payload.get("classes")
    _require(isinstance(classes_raw, list), "document", 'missing "classes" list')
    classes: dict[str, ClassDoc] = {}
    for entry in classes_raw:
        _require(isinstance(entry, dict), "document", "class entry is not an object")
        name = entry.get("name")
        _require(isinstance(name, str) and bool(name), "document", "class without a name")
        _require(name not in classes, f"class {name}", "duplicate class")
        supers = entry.get("superclasses", [])
        _require(
            isinstance(supers, list) and all(isinstance(s, str) for s in supers),
            f"class {name}",
            "superclasses is not a list of strings",
        )
        methods = entry.get("methods", [])
        _require(isinstance(methods, list), f"class {name}", "methods is not a list")
        classes[name] = ClassDoc(
            name=name,
            superclasses=tuple(supers),
            methods=tuple(_parse_method(name, m) for m in methods),
        )
    model = DocumentationModel(classes=classes)
    model.validate()
    return model


def model_to_dict(model: DocumentationModel) -> dict:
    """Inverse of :func:`model_from_dict`; round-trips exactly."""
    return {
        "classes": [
            {
                "name": cls.name,
                "superclasses": list(cls.superclasses),
                "methods": [
                    {
                        "name": m.id.method_name,
                        "returnType": m.return_type.raw,
                        "deprecated": m.deprecated,
                        "params": [
                            {"name": n, "type": t.raw}
                            for n, t in zip(m.param_names, m.id.param_types)
                        ],
                        "description": m.description,
                    }
                    for m in cls.methods
                ],
            }
            for cls in model.classes.values()
        ]
    }


def load_canonical(path: str | Path) -> DocumentationModel:
    """Load a canonical documentation file (UTF-8 JSON)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocParseError(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocParseError(f"{path}: invalid JSON: {exc}") from exc
    return model_from_dict(payload)


def save_canonical(model: DocumentationModel, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def resolve_universe(model: DocumentationModel, class_name: str) -> list[MethodDoc]:
    """All non-deprecated methods callable on ``class_name``.

    Own methods come first, then inherited ones (nearest superclass first),
    re-keyed so every returned id carries ``class_name``.  An own method with
    an identical signature shadows the inherited one; deprecated methods are
    dropped entirely.
    """
    if class_name not in model.classes:
        raise UnknownClassError(class_name)
    out: list[MethodDoc] = []
    seen: set[tuple[str, tuple[str, ...]]] = set()
    sources = [class_name] + model.superclasses_of(class_name)
    for source in sources:
        cls = model.classes.get(source)
        if cls is None:
            continue
        for m in cls.methods:
            sig = (m.id.method_name, tuple(t.raw for t in m.id.param_types))
            if sig in seen:
                continue
            seen.add(sig)
            if m.deprecated:
                continue
            if m.id.class_name != class_name:
                m = replace(m, id=replace(m.id, class_name=class_name))
            out.append(m)
    return out


def type_consistent(
    model: DocumentationModel,
    a: TypeName,
    b: TypeName,
    *,
    box_primitives: bool = False,
) -> bool:
    """Could values of these two types be the same object?

    True when the raw names are equal, the erased names are equal, or one
    erased name is a documented (transitive) superclass of the other.
    ``void`` is consistent with nothing, including itself.
    """
    if a.is_void or b.is_void:
        return False
    ea, eb = a.erased, b.erased
    if box_primitives:
        ea = BOXED_PRIMITIVES.get(ea, ea)
        eb = BOXED_PRIMITIVES.get(eb, eb)
    if a.raw == b.raw or ea == eb:
        return True
    if ea in model.classes and eb in model.superclasses_of(ea):
        return True
    if eb in model.classes and ea in model.superclasses_of(eb):
        return True
    return False

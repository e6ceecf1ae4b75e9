"""API value graph: parameters and returns as nodes, type-agreeing pairs as edges.

A node is one value slot of one method -- a parameter (index >= 0) or the
return value (index -1) -- labeled with the identifier that names it and the
method's description.  Candidate edges between an ordered method pair are
the type-consistent (param -> param) and (param -> return) combinations;
they over-approximate which values could alias, and later stages prune them.

Edges are generated per ordered pair on demand; the cross product over all
pairs is never materialized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .docmodel import DocumentationModel, MethodDoc, MethodId, TypeName, resolve_universe, type_consistent
from .errors import UnknownMethodError

__all__ = ["ApiValueNode", "ApiValueGraph", "CandidateEdge", "EdgeKind", "build_graph"]

RETURN_INDEX = -1


@dataclass(frozen=True)
class ApiValueNode:
    class_name: str
    method: MethodId
    index: int  # -1 for the return value, else 0-based parameter index
    type: TypeName
    name_label: str
    description_label: str

    @property
    def is_return(self) -> bool:
        return self.index == RETURN_INDEX


class EdgeKind(enum.Enum):
    PARAM_PARAM = "param-param"
    PARAM_RETURN = "param-return"


@dataclass(frozen=True)
class CandidateEdge:
    src: ApiValueNode  # a parameter of the store-side method
    dst: ApiValueNode  # a parameter or the return of the load-side method

    @property
    def kind(self) -> EdgeKind:
        return EdgeKind.PARAM_RETURN if self.dst.is_return else EdgeKind.PARAM_PARAM

    @property
    def index_pair(self) -> tuple[int, int]:
        return (self.src.index, self.dst.index)


class ApiValueGraph:
    """Value nodes for one class's method universe.

    Immutable after construction; :meth:`candidate_edges` is pure, so the
    graph is safe to share across workers.
    """

    def __init__(self, model: DocumentationModel, class_name: str, *, box_primitives: bool = False):
        self.model = model
        self.class_name = class_name
        self.box_primitives = box_primitives
        self.universe: list[MethodDoc] = resolve_universe(model, class_name)
        self._by_id: dict[MethodId, MethodDoc] = {m.id: m for m in self.universe}
        self._nodes: dict[MethodId, list[ApiValueNode]] = {}
        for m in self.universe:
            nodes = [
                ApiValueNode(class_name, m.id, i, t, name, m.description)
                for i, (name, t) in enumerate(zip(m.param_names, m.id.param_types))
            ]
            if not m.return_type.is_void:
                nodes.append(
                    ApiValueNode(class_name, m.id, RETURN_INDEX, m.return_type, m.id.method_name, m.description)
                )
            self._nodes[m.id] = nodes

    @property
    def nodes(self) -> list[ApiValueNode]:
        return [n for nodes in self._nodes.values() for n in nodes]

    def method(self, method_id: MethodId) -> MethodDoc:
        try:
            return self._by_id[method_id]
        except KeyError:
            raise UnknownMethodError(str(method_id)) from None

    def params_of(self, method_id: MethodId) -> list[ApiValueNode]:
        return [n for n in self._nodes_of(method_id) if not n.is_return]

    def return_of(self, method_id: MethodId) -> ApiValueNode | None:
        nodes = self._nodes_of(method_id)
        return nodes[-1] if nodes and nodes[-1].is_return else None

    def _nodes_of(self, method_id: MethodId) -> list[ApiValueNode]:
        if method_id not in self._nodes:
            raise UnknownMethodError(str(method_id))
        return self._nodes[method_id]

    def candidate_edges(self, m1: MethodId, m2: MethodId) -> list[CandidateEdge]:
        """Type-consistent value pairs from m1's parameters into m2.

        Order is deterministic: ascending source index, and within it the
        destination parameters ascending with the return value last.
        """
        sources = self.params_of(m1)
        targets = self.params_of(m2)
        ret = self.return_of(m2)
        out: list[CandidateEdge] = []
        for src in sources:
            for dst in targets:
                if self._consistent(src.type, dst.type):
                    out.append(CandidateEdge(src, dst))
            if ret is not None and self._consistent(src.type, ret.type):
                out.append(CandidateEdge(src, ret))
        return out

    def _consistent(self, a: TypeName, b: TypeName) -> bool:
        return type_consistent(self.model, a, b, box_primitives=self.box_primitives)


def build_graph(model: DocumentationModel, class_name: str, *, box_primitives: bool = False) -> ApiValueGraph:
    return ApiValueGraph(model, class_name, box_primitives=box_primitives)

from __future__ import annotations

import dataclasses
import logging
from enum import IntEnum
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx

from ..common.constants import MIN_EDGE_LENGTH
from ..common.errors import GraphShapeError, GraphValidationError, GraphContractionError, EdgeRangeError
from ..common.utils import cached_method, str_fmt_object


LOG = logging.getLogger(__name__)


class VertexKind(IntEnum):
    Dirichlet = 0
    Free = 1


@dataclasses.dataclass(frozen=True)
class VertexRole:
    kind: VertexKind
    pin: Optional[int] = None

    @staticmethod
    def dirichlet(pin: int) -> VertexRole:
        return VertexRole(kind=VertexKind.Dirichlet, pin=pin)

    @staticmethod
    def free() -> VertexRole:
        return VertexRole(kind=VertexKind.Free)

    @property
    def is_dirichlet(self) -> bool:
        return self.kind == VertexKind.Dirichlet

    def __str__(self) -> str:
        return f'D{self.pin + 1}' if self.is_dirichlet else 'free'


@dataclasses.dataclass(frozen=True)
class GraphVertex:
    id: int
    role: VertexRole

    def __str__(self) -> str:
        return f'{self.id}:{self.role}'


@dataclasses.dataclass(frozen=True)
class GraphEdge:
    id: int
    u: int
    v: int
    length: float

    def other(self, vertex_id: int) -> int:
        return self.v if vertex_id == self.u else self.u

    def __str__(self) -> str:
        return f'{self.id}:({self.u}-{self.v}, {self.length!r})'


@dataclasses.dataclass(frozen=True)
class GraphDiagnostics:
    connected: bool
    nonpositive_edge_list: Tuple[int, ...] = ()
    short_edge_list: Tuple[int, ...] = ()
    duplicate_edge_list: Tuple[int, ...] = ()
    isolated_vertex_list: Tuple[int, ...] = ()
    self_loop_list: Tuple[int, ...] = ()
    unknown_endpoint_list: Tuple[int, ...] = ()
    bad_pin_list: Tuple[int, ...] = ()
    duplicate_id_list: Tuple[str, ...] = ()

    @property
    def is_valid(self) -> bool:
        return self.connected and not any((
            self.nonpositive_edge_list, self.short_edge_list, self.duplicate_edge_list,
            self.isolated_vertex_list, self.self_loop_list, self.unknown_endpoint_list,
            self.bad_pin_list, self.duplicate_id_list,
        ))

    def __str__(self) -> str:
        return str_fmt_object(self)


@dataclasses.dataclass(frozen=True)
class MetricGraph:
    """Immutable simple graph with edge lengths and per-vertex boundary roles."""

    vertex_list: Tuple[GraphVertex, ...]
    edge_list: Tuple[GraphEdge, ...]

    @staticmethod
    def from_lists(
        vertex_iter: Iterable[Tuple[int, VertexRole]],
        edge_iter: Iterable[Tuple[int, int, int, float]],
    ) -> MetricGraph:
        return MetricGraph(
            vertex_list=tuple(GraphVertex(id=vid, role=role) for vid, role in vertex_iter),
            edge_list=tuple(GraphEdge(id=eid, u=u, v=v, length=float(length)) for eid, u, v, length in edge_iter),
        )

    def __str__(self) -> str:
        vertex_str = ', '.join(str(v) for v in self.vertex_list)
        edge_str = ', '.join(str(e) for e in self.edge_list)
        return f'MetricGraph(vertices=[{vertex_str}], edges=[{edge_str}])'

    @cached_method
    def vertex_dict(self) -> Dict[int, GraphVertex]:
        return {v.id: v for v in self.vertex_list}

    @cached_method
    def edge_dict(self) -> Dict[int, GraphEdge]:
        return {e.id: e for e in self.edge_list}

    @cached_method
    def vertex_index_dict(self) -> Dict[int, int]:
        return {v.id: idx for idx, v in enumerate(self.vertex_list)}

    @cached_method
    def incident_edge_dict(self) -> Dict[int, Tuple[GraphEdge, ...]]:
        incident_dict: Dict[int, List[GraphEdge]] = {v.id: list() for v in self.vertex_list}
        for e in self.edge_list:
            for vid in (e.u, e.v):
                if vid in incident_dict:
                    incident_dict[vid].append(e)
        return {vid: tuple(e_list) for vid, e_list in incident_dict.items()}

    @cached_method
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(v.id for v in self.vertex_list)
        for e in self.edge_list:
            if (e.u in graph) and (e.v in graph):
                graph.add_edge(e.u, e.v, length=e.length, id=e.id)
        return graph

    def role(self, vertex_id: int) -> VertexRole:
        return self.vertex_dict()[vertex_id].role

    def edge(self, edge_id: int) -> GraphEdge:
        edge = self.edge_dict().get(edge_id, None)
        if edge is None:
            raise GraphShapeError(f'unknown edge {edge_id}')
        return edge

    def edge_between(self, u: int, v: int) -> Optional[GraphEdge]:
        for e in self.incident_edge_dict().get(u, ()):
            if e.other(u) == v:
                return e
        return None

    def degree(self, vertex_id: int) -> int:
        return len(self.incident_edge_dict()[vertex_id])

    @property
    def dirichlet_vertex_list(self) -> List[GraphVertex]:
        return [v for v in self.vertex_list if v.role.is_dirichlet]

    @property
    def free_vertex_list(self) -> List[GraphVertex]:
        return [v for v in self.vertex_list if not v.role.is_dirichlet]

    def require_valid(self) -> None:
        diagnostics = validate(self)
        if not diagnostics.is_valid:
            raise GraphValidationError(diagnostics)


def validate(g: MetricGraph, min_length: float = MIN_EDGE_LENGTH) -> GraphDiagnostics:
    vertex_id_set: Set[int] = set()
    duplicate_id_list: List[str] = list()
    pin_set: Set[int] = set()
    bad_pin_list: List[int] = list()
    for v in g.vertex_list:
        if v.id in vertex_id_set:
            duplicate_id_list.append(f'vertex {v.id}')
        vertex_id_set.add(v.id)
        if v.role.is_dirichlet:
            if (v.role.pin is None) or (v.role.pin < 0) or (v.role.pin in pin_set):
                bad_pin_list.append(v.id)
            else:
                pin_set.add(v.role.pin)

    edge_id_set: Set[int] = set()
    pair_set: Set[frozenset] = set()
    nonpositive_list, short_list, duplicate_list, loop_list, unknown_list = list(), list(), list(), list(), list()
    for e in g.edge_list:
        if e.id in edge_id_set:
            duplicate_id_list.append(f'edge {e.id}')
        edge_id_set.add(e.id)

        # NaN fails every comparison, so test the positive case
        if not (e.length > 0.0):
            nonpositive_list.append(e.id)
        elif e.length < min_length:
            short_list.append(e.id)

        if (e.u not in vertex_id_set) or (e.v not in vertex_id_set):
            unknown_list.append(e.id)
        elif e.u == e.v:
            loop_list.append(e.id)
        else:
            pair = frozenset((e.u, e.v))
            if pair in pair_set:
                duplicate_list.append(e.id)
            pair_set.add(pair)

    nx_graph = g.nx_graph()
    connected = (nx_graph.number_of_nodes() > 0) and nx.is_connected(nx_graph)
    isolated_list = sorted(vid for vid, deg in nx_graph.degree() if deg == 0)

    return GraphDiagnostics(
        connected=connected,
        nonpositive_edge_list=tuple(nonpositive_list),
        short_edge_list=tuple(short_list),
        duplicate_edge_list=tuple(duplicate_list),
        isolated_vertex_list=tuple(isolated_list),
        self_loop_list=tuple(loop_list),
        unknown_endpoint_list=tuple(unknown_list),
        bad_pin_list=tuple(bad_pin_list),
        duplicate_id_list=tuple(duplicate_id_list),
    )


def total_length(g: MetricGraph) -> float:
    return float(sum(e.length for e in g.edge_list))


def is_tree(g: MetricGraph) -> bool:
    nx_graph = g.nx_graph()
    return (
        (nx_graph.number_of_nodes() > 0) and
        (len(g.edge_list) == len(g.vertex_list) - 1) and
        nx.is_tree(nx_graph)
    )


def graph_distance(g: MetricGraph, u: int, v: int) -> float:
    if u == v:
        if u not in g.vertex_dict():
            raise GraphShapeError(f'unknown vertex {u}')
        return 0.0
    try:
        return float(nx.dijkstra_path_length(g.nx_graph(), u, v, weight='length'))
    except (nx.NetworkXNoPath, nx.NodeNotFound) as exc:
        raise GraphShapeError(f'vertex {v} is unreachable from {u}: {exc}')


def scale_lengths(g: MetricGraph, factor: float) -> MetricGraph:
    if not (factor > 0.0):
        raise GraphShapeError(f'scale factor must be positive, got {factor!r}')
    edge_list = tuple(dataclasses.replace(e, length=e.length * factor) for e in g.edge_list)
    return MetricGraph(vertex_list=g.vertex_list, edge_list=edge_list)


def subdivide_edge(g: MetricGraph, edge_id: int, position: float) -> MetricGraph:
    """Splits the edge at `position` measured from its `u` end; the `u` piece keeps the edge id."""
    edge = g.edge(edge_id)
    if not (0.0 < position < edge.length):
        raise EdgeRangeError(edge_id, position, edge.length)

    new_vertex_id = max(v.id for v in g.vertex_list) + 1
    new_edge_id = max(e.id for e in g.edge_list) + 1

    edge_list: List[GraphEdge] = list()
    for e in g.edge_list:
        if e.id != edge_id:
            edge_list.append(e)
            continue
        edge_list.append(GraphEdge(id=e.id, u=e.u, v=new_vertex_id, length=position))
        edge_list.append(GraphEdge(id=new_edge_id, u=new_vertex_id, v=e.v, length=e.length - position))

    vertex_list = g.vertex_list + (GraphVertex(id=new_vertex_id, role=VertexRole.free()),)
    return MetricGraph(vertex_list=vertex_list, edge_list=tuple(edge_list))


class _UnionFind:
    def __init__(self, item_iter: Iterable[int]):
        self._parent = {item: item for item in item_iter}

    def find(self, item: int) -> int:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, first: int, second: int) -> None:
        first_root, second_root = self.find(first), self.find(second)
        if first_root != second_root:
            # smallest id represents the class
            low, high = sorted((first_root, second_root))
            self._parent[high] = low


def contract_short_edges(g: MetricGraph, eps: float) -> MetricGraph:
    """Identifies the endpoints of every edge with length <= eps and re-simplifies the result."""
    diagnostics = validate(g, min_length=0.0)
    if (not diagnostics.connected) or diagnostics.self_loop_list or diagnostics.unknown_endpoint_list or \
            diagnostics.bad_pin_list or diagnostics.duplicate_id_list:
        raise GraphValidationError(diagnostics)
    if any(e.length < 0.0 for e in g.edge_list):
        raise GraphValidationError(diagnostics)

    union_find = _UnionFind(v.id for v in g.vertex_list)
    for e in g.edge_list:
        if e.length <= eps:
            union_find.union(e.u, e.v)

    dirichlet_dict: Dict[int, GraphVertex] = dict()
    for v in g.vertex_list:
        if not v.role.is_dirichlet:
            continue
        root = union_find.find(v.id)
        prev = dirichlet_dict.get(root, None)
        if prev is not None:
            raise GraphContractionError(prev.id, v.id)
        dirichlet_dict[root] = v

    vertex_list: List[GraphVertex] = list()
    for v in g.vertex_list:
        root = union_find.find(v.id)
        if root != v.id:
            continue
        pin_vertex = dirichlet_dict.get(root, None)
        role = pin_vertex.role if pin_vertex is not None else VertexRole.free()
        vertex_list.append(GraphVertex(id=root, role=role))

    # group the surviving edges by their contracted endpoints
    class_dict: Dict[Tuple[int, int], List[GraphEdge]] = dict()
    for e in g.edge_list:
        if e.length <= eps:
            continue
        u, v = union_find.find(e.u), union_find.find(e.v)
        key = (min(u, v), max(u, v))
        class_dict.setdefault(key, list()).append(GraphEdge(id=e.id, u=u, v=v, length=e.length))

    next_vertex_id = max(v.id for v in g.vertex_list) + 1
    next_edge_id = max((e.id for e in g.edge_list), default=-1) + 1
    edge_list: List[GraphEdge] = list()

    for (u, v), e_list in class_dict.items():
        if u == v:
            # a cycle collapsed into a loop, split it into thirds
            for e in e_list:
                if e.length / 3 <= eps:
                    LOG.warning(f'drop loop edge {e.id} with length {e.length!r} after contraction')
                    continue
                first_id, second_id = next_vertex_id, next_vertex_id + 1
                next_vertex_id += 2
                vertex_list.append(GraphVertex(id=first_id, role=VertexRole.free()))
                vertex_list.append(GraphVertex(id=second_id, role=VertexRole.free()))
                part = e.length / 3
                edge_list.append(GraphEdge(id=e.id, u=u, v=first_id, length=part))
                edge_list.append(GraphEdge(id=next_edge_id, u=first_id, v=second_id, length=part))
                edge_list.append(GraphEdge(id=next_edge_id + 1, u=second_id, v=u, length=e.length - 2 * part))
                next_edge_id += 2
            continue

        split_list = [e for e in e_list if e.length / 2 > eps]
        if len(split_list) < len(e_list):
            if not split_list:
                split_list = [max(e_list, key=lambda x: x.length)]
            # the longest kept edge takes over the length of the dropped ones
            dropped = sum(e.length for e in e_list) - sum(e.length for e in split_list)
            longest = max(split_list, key=lambda x: x.length)
            split_list[split_list.index(longest)] = GraphEdge(id=longest.id, u=u, v=v, length=longest.length + dropped)
            LOG.debug(f'fold {len(e_list) - len(split_list)} parallel edges between {u} and {v} into edge {longest.id}')

        if len(split_list) == 1:
            edge_list.append(split_list[0])
            continue

        for e in split_list:
            mid_id = next_vertex_id
            next_vertex_id += 1
            vertex_list.append(GraphVertex(id=mid_id, role=VertexRole.free()))
            half = e.length / 2
            edge_list.append(GraphEdge(id=e.id, u=e.u, v=mid_id, length=half))
            edge_list.append(GraphEdge(id=next_edge_id, u=mid_id, v=e.v, length=e.length - half))
            next_edge_id += 1

    return MetricGraph(vertex_list=tuple(vertex_list), edge_list=tuple(edge_list))


def merge_degree_two(g: MetricGraph) -> MetricGraph:
    """Removes free degree-two vertices by joining their two edges into one."""
    vertex_dict = {v.id: v for v in g.vertex_list}
    edge_dict = {e.id: e for e in g.edge_list}

    changed = True
    while changed:
        changed = False
        incident_dict: Dict[int, List[GraphEdge]] = {vid: list() for vid in vertex_dict}
        for e in edge_dict.values():
            incident_dict[e.u].append(e)
            incident_dict[e.v].append(e)

        for vid in sorted(vertex_dict):
            if vertex_dict[vid].role.is_dirichlet or len(incident_dict[vid]) != 2:
                continue
            first, second = sorted(incident_dict[vid], key=lambda x: x.id)
            u, v = first.other(vid), second.other(vid)
            if u == v:
                continue
            if any(e.other(u) == v for e in incident_dict[u]):
                continue

            edge_dict.pop(second.id)
            edge_dict[first.id] = GraphEdge(id=first.id, u=u, v=v, length=first.length + second.length)
            vertex_dict.pop(vid)
            changed = True
            break

    vertex_list = tuple(v for v in g.vertex_list if v.id in vertex_dict)
    edge_list = tuple(edge_dict[e.id] for e in g.edge_list if e.id in edge_dict)
    return MetricGraph(vertex_list=vertex_list, edge_list=edge_list)

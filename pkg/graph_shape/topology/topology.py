from __future__ import annotations

import dataclasses
import logging
from enum import IntEnum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..common.errors import TopologyError
from ..common.utils import cached_method
from ..graph_core import MetricGraph, VertexRole, merge_degree_two


LOG = logging.getLogger(__name__)


class TopologyRole(IntEnum):
    Dirichlet = 0
    Kirchhoff = 1
    Neumann = 2


@dataclasses.dataclass(frozen=True)
class TopologyVertex:
    role: TopologyRole
    pin: Optional[int] = None

    @property
    def label(self) -> str:
        if self.role == TopologyRole.Dirichlet:
            return f'D{self.pin + 1}'
        elif self.role == TopologyRole.Kirchhoff:
            return 'K'
        return 'N'


@dataclasses.dataclass(frozen=True)
class Topology:
    """Tree skeleton without lengths; vertices are addressed by their position."""

    dirichlet_cnt: int
    vertex_list: Tuple[TopologyVertex, ...]
    edge_list: Tuple[Tuple[int, int], ...]
    canonical_code: str

    def __str__(self) -> str:
        return self.canonical_code

    @property
    def vertex_cnt(self) -> int:
        return len(self.vertex_list)

    @property
    def edge_cnt(self) -> int:
        return len(self.edge_list)

    @property
    def has_neumann(self) -> bool:
        return any(v.role == TopologyRole.Neumann for v in self.vertex_list)

    @cached_method
    def pin_index_dict(self) -> Dict[int, int]:
        return {v.pin: idx for idx, v in enumerate(self.vertex_list) if v.role == TopologyRole.Dirichlet}

    @cached_method
    def free_index_list(self) -> Tuple[int, ...]:
        return tuple(idx for idx, v in enumerate(self.vertex_list) if v.role != TopologyRole.Dirichlet)

    @cached_method
    def dirichlet_mask(self) -> Tuple[bool, ...]:
        return tuple(v.role == TopologyRole.Dirichlet for v in self.vertex_list)

    @cached_method
    def degree_list(self) -> Tuple[int, ...]:
        degree = [0] * self.vertex_cnt
        for u, v in self.edge_list:
            degree[u] += 1
            degree[v] += 1
        return tuple(degree)

    @cached_method
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_cnt))
        for idx, (u, v) in enumerate(self.edge_list):
            graph.add_edge(u, v, idx=idx)
        return graph

    @cached_method
    def pin_path_list(self) -> Tuple[Tuple[int, int, Tuple[int, ...]], ...]:
        """(pin vertex, pin vertex, edge indices of the tree path) for every Dirichlet pair."""
        graph = self.nx_graph()
        pin_idx_list = sorted(self.pin_index_dict().values())
        path_list: List[Tuple[int, int, Tuple[int, ...]]] = list()
        for pos, first in enumerate(pin_idx_list):
            for second in pin_idx_list[pos + 1:]:
                node_path = nx.shortest_path(graph, first, second)
                edge_path = tuple(graph.edges[a, b]['idx'] for a, b in zip(node_path[:-1], node_path[1:]))
                path_list.append((first, second, edge_path))
        return tuple(path_list)

    def to_metric_graph(self, length_list: Sequence[float]) -> MetricGraph:
        if len(length_list) != self.edge_cnt:
            raise TopologyError(f'{self.edge_cnt} lengths expected, got {len(length_list)}')
        vertex_iter = (
            (idx, VertexRole.dirichlet(v.pin) if v.role == TopologyRole.Dirichlet else VertexRole.free())
            for idx, v in enumerate(self.vertex_list)
        )
        edge_iter = ((idx, u, v, length) for idx, ((u, v), length) in enumerate(zip(self.edge_list, length_list)))
        return MetricGraph.from_lists(vertex_iter, edge_iter)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'code': self.canonical_code,
            'vertices': [v.label for v in self.vertex_list],
            'edges': [list(e) for e in self.edge_list],
        }


def _rooted_code(adjacency: Dict[int, List[int]], label_list: Sequence[str], vertex: int, parent: int) -> str:
    child_list = sorted(
        _rooted_code(adjacency, label_list, child, vertex)
        for child in adjacency[vertex] if child != parent
    )
    return label_list[vertex] + '(' + ''.join(child_list) + ')'


def _code_from_parts(label_list: Sequence[str], edge_list: Sequence[Tuple[int, int]]) -> str:
    adjacency: Dict[int, List[int]] = {idx: list() for idx in range(len(label_list))}
    for u, v in edge_list:
        adjacency[u].append(v)
        adjacency[v].append(u)
    # AHU code minimized over every rooting, the labels carry role and pin
    return min(_rooted_code(adjacency, label_list, root, -1) for root in range(len(label_list)))


def canonical_code(t: Topology) -> str:
    return _code_from_parts([v.label for v in t.vertex_list], t.edge_list)


def _normalize(
    dirichlet_cnt: int,
    vertex_list: Sequence[TopologyVertex],
    edge_list: Sequence[Tuple[int, int]],
) -> Tuple[Topology, Dict[int, int]]:
    label_list = [v.label for v in vertex_list]
    code = _code_from_parts(label_list, edge_list)

    adjacency: Dict[int, List[int]] = {idx: list() for idx in range(len(vertex_list))}
    for u, v in edge_list:
        adjacency[u].append(v)
        adjacency[v].append(u)

    def _order_key(idx: int):
        vertex = vertex_list[idx]
        pin = vertex.pin if vertex.pin is not None else -1
        return int(vertex.role), pin, _rooted_code(adjacency, label_list, idx, -1)

    order = sorted(range(len(vertex_list)), key=_order_key)
    position = {old: new for new, old in enumerate(order)}
    norm_edge_list = sorted(
        (min(position[u], position[v]), max(position[u], position[v]))
        for u, v in edge_list
    )
    topology = Topology(
        dirichlet_cnt=dirichlet_cnt,
        vertex_list=tuple(vertex_list[old] for old in order),
        edge_list=tuple(norm_edge_list),
        canonical_code=code,
    )
    return topology, position


def make_topology(
    dirichlet_cnt: int,
    vertex_list: Sequence[TopologyVertex],
    edge_list: Sequence[Tuple[int, int]],
) -> Topology:
    """Builds a topology with a normalized vertex and edge order and its canonical code."""
    return _normalize(dirichlet_cnt, vertex_list, edge_list)[0]


def check_topology(t: Topology) -> List[str]:
    """Lists every violated topology invariant."""
    problem_list: List[str] = list()
    if t.vertex_cnt < 2:
        problem_list.append('topology needs at least one edge')
    if t.edge_cnt != t.vertex_cnt - 1 or not nx.is_tree(t.nx_graph()):
        problem_list.append('not a tree')

    pin_list = sorted(v.pin for v in t.vertex_list if v.role == TopologyRole.Dirichlet)
    if pin_list != list(range(t.dirichlet_cnt)):
        problem_list.append(f'pins {pin_list} do not cover 0..{t.dirichlet_cnt - 1}')

    degree_list = t.degree_list()
    neumann_cnt = 0
    for idx, v in enumerate(t.vertex_list):
        if v.role == TopologyRole.Neumann:
            neumann_cnt += 1
            if degree_list[idx] != 1:
                problem_list.append(f'Neumann vertex {idx} has degree {degree_list[idx]}')
        elif v.role == TopologyRole.Kirchhoff and degree_list[idx] < 3:
            problem_list.append(f'Kirchhoff vertex {idx} has degree {degree_list[idx]}')
    if neumann_cnt > 1:
        problem_list.append(f'{neumann_cnt} Neumann vertices')

    if t.vertex_cnt > 2 * t.dirichlet_cnt:
        problem_list.append(f'{t.vertex_cnt} vertices exceed {2 * t.dirichlet_cnt}')
    if t.canonical_code != canonical_code(t):
        problem_list.append('stale canonical code')
    return problem_list


def topology_from_graph(g: MetricGraph) -> Tuple[Topology, Tuple[float, ...]]:
    """Reads the skeleton of a metric tree; free leaves become Neumann, other free vertices Kirchhoff."""
    smooth = merge_degree_two(g)
    index_dict = smooth.vertex_index_dict()
    vertex_list: List[TopologyVertex] = list()
    for v in smooth.vertex_list:
        if v.role.is_dirichlet:
            vertex_list.append(TopologyVertex(role=TopologyRole.Dirichlet, pin=v.role.pin))
        elif smooth.degree(v.id) == 1:
            vertex_list.append(TopologyVertex(role=TopologyRole.Neumann))
        else:
            vertex_list.append(TopologyVertex(role=TopologyRole.Kirchhoff))

    edge_list = [(index_dict[e.u], index_dict[e.v]) for e in smooth.edge_list]
    topology, position = _normalize(len(smooth.dirichlet_vertex_list), vertex_list, edge_list)

    problem_list = check_topology(topology)
    if problem_list:
        raise TopologyError(f'graph skeleton is not an admissible topology: {problem_list}')

    length_dict: Dict[Tuple[int, int], float] = dict()
    for (u, v), e in zip(edge_list, smooth.edge_list):
        a, b = position[u], position[v]
        length_dict[(min(a, b), max(a, b))] = e.length
    return topology, tuple(length_dict[edge] for edge in topology.edge_list)

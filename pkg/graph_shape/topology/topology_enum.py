from __future__ import annotations

import itertools
import logging
import threading
from typing import Dict, Iterator, List, Optional

import networkx as nx
from singleton_decorator import singleton

from ..common.errors import TopologyError
from .topology import Topology, TopologyRole, TopologyVertex, make_topology


LOG = logging.getLogger(__name__)


def _check_dirichlet_cnt(k: int) -> None:
    if k < 1:
        raise TopologyError(f'at least one Dirichlet vertex is required, got {k}')


def _role_assignments(tree: nx.Graph, k: int) -> Iterator[Dict[int, TopologyVertex]]:
    """Every way to put k pins, Kirchhoff vertices (degree >= 3) and at most one Neumann leaf on a tree."""
    degree = dict(tree.degree())
    node_list = sorted(tree.nodes())
    leaf_list = [v for v in node_list if degree[v] == 1]
    branch_list = [v for v in node_list if degree[v] >= 3]

    for neumann_cnt in (0, 1):
        kirchhoff_cnt = len(node_list) - k - neumann_cnt
        if kirchhoff_cnt < 0:
            continue
        neumann_choice_list = leaf_list if neumann_cnt else [None]
        for neumann in neumann_choice_list:
            candidate_list = [v for v in branch_list if v != neumann]
            for kirchhoff_set in itertools.combinations(candidate_list, kirchhoff_cnt):
                pin_node_list = [v for v in node_list if (v != neumann) and (v not in kirchhoff_set)]
                for pin_order in itertools.permutations(range(k)):
                    vertex_dict = {v: TopologyVertex(role=TopologyRole.Kirchhoff) for v in kirchhoff_set}
                    if neumann is not None:
                        vertex_dict[neumann] = TopologyVertex(role=TopologyRole.Neumann)
                    for node, pin in zip(pin_node_list, pin_order):
                        vertex_dict[node] = TopologyVertex(role=TopologyRole.Dirichlet, pin=pin)
                    yield vertex_dict


def _build(k: int, tree: nx.Graph, vertex_dict: Dict[int, TopologyVertex]) -> Topology:
    node_list = sorted(tree.nodes())
    position = {node: idx for idx, node in enumerate(node_list)}
    return make_topology(
        k,
        [vertex_dict[node] for node in node_list],
        [(position[u], position[v]) for u, v in tree.edges()],
    )


def enumerate_topologies(k: int) -> List[Topology]:
    """Trees with k labelled pins, Kirchhoff vertices of degree >= 3, at most one Neumann leaf, <= 2k vertices."""
    _check_dirichlet_cnt(k)
    topology_dict: Dict[str, Topology] = dict()
    for vertex_cnt in range(2, 2 * k + 1):
        for tree in nx.nonisomorphic_trees(vertex_cnt):
            for vertex_dict in _role_assignments(tree, k):
                topology = _build(k, tree, vertex_dict)
                topology_dict.setdefault(topology.canonical_code, topology)

    topology_list = [topology_dict[code] for code in sorted(topology_dict)]
    LOG.debug(f'{len(topology_list)} topologies for k={k}')
    return topology_list


def brute_force_topologies(k: int) -> List[Topology]:
    """Same set as enumerate_topologies, from every labelled tree (Pruefer sequences) on <= 2k vertices."""
    _check_dirichlet_cnt(k)
    topology_dict: Dict[str, Topology] = dict()
    for vertex_cnt in range(2, 2 * k + 1):
        for neumann_cnt in (0, 1):
            kirchhoff_cnt = vertex_cnt - k - neumann_cnt
            if kirchhoff_cnt < 0:
                continue
            kirchhoff_list = list(range(k, k + kirchhoff_cnt))
            neumann = vertex_cnt - 1 if neumann_cnt else None

            vertex_dict = {pin: TopologyVertex(role=TopologyRole.Dirichlet, pin=pin) for pin in range(k)}
            vertex_dict.update({v: TopologyVertex(role=TopologyRole.Kirchhoff) for v in kirchhoff_list})
            if neumann is not None:
                vertex_dict[neumann] = TopologyVertex(role=TopologyRole.Neumann)

            for sequence in itertools.product(range(vertex_cnt), repeat=vertex_cnt - 2):
                # a vertex appears deg - 1 times in the sequence
                if (neumann is not None) and (neumann in sequence):
                    continue
                if any(sequence.count(v) < 2 for v in kirchhoff_list):
                    continue
                if vertex_cnt == 2:
                    tree = nx.Graph([(0, 1)])
                else:
                    tree = nx.from_prufer_sequence(list(sequence))
                topology = _build(k, tree, vertex_dict)
                topology_dict.setdefault(topology.canonical_code, topology)

    return [topology_dict[code] for code in sorted(topology_dict)]


@singleton
class TopologyCatalog:
    """Process wide cache of enumerated topologies."""

    def __init__(self):
        self._lock = threading.Lock()
        self._topology_dict: Dict[int, List[Topology]] = dict()

    def get_topology_list(self, k: int) -> List[Topology]:
        with self._lock:
            topology_list = self._topology_dict.get(k, None)
            if topology_list is None:
                topology_list = enumerate_topologies(k)
                self._topology_dict[k] = topology_list
            return list(topology_list)

    def find_topology(self, k: int, code: str) -> Optional[Topology]:
        for topology in self.get_topology_list(k):
            if topology.canonical_code == code:
                return topology
        return None

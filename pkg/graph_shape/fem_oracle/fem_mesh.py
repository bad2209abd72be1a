from __future__ import annotations

import dataclasses
from typing import Dict, Tuple

import numpy as np
import scipy.sparse

from ..common.errors import FemMeshError
from ..graph_core import MetricGraph


@dataclasses.dataclass(frozen=True, eq=False)
class Mesh:
    graph: MetricGraph
    subdivision_cnt: int
    node_cnt: int
    vertex_node_dict: Dict[int, int]
    edge_node_array: np.ndarray
    edge_step_array: np.ndarray
    dirichlet_node_array: np.ndarray

    @property
    def free_node_array(self) -> np.ndarray:
        mask = np.ones(self.node_cnt, dtype=bool)
        mask[self.dirichlet_node_array] = False
        return np.flatnonzero(mask)

    def element_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Left node, right node and step of every element, edge after edge."""
        left = self.edge_node_array[:, :-1].ravel()
        right = self.edge_node_array[:, 1:].ravel()
        step = np.repeat(self.edge_step_array, self.subdivision_cnt)
        return left, right, step


def build_mesh(g: MetricGraph, n: int) -> Mesh:
    if n < 2:
        raise FemMeshError(f'subdivision count must be at least 2, got {n}')
    g.require_valid()

    # vertex nodes first, then the interior nodes edge by edge
    vertex_node_dict = {v.id: idx for idx, v in enumerate(g.vertex_list)}
    node_cnt = len(g.vertex_list)
    edge_node_array = np.empty((len(g.edge_list), n + 1), dtype=np.intp)
    for row, e in enumerate(g.edge_list):
        edge_node_array[row, 0] = vertex_node_dict[e.u]
        edge_node_array[row, n] = vertex_node_dict[e.v]
        edge_node_array[row, 1:n] = np.arange(node_cnt, node_cnt + n - 1)
        node_cnt += n - 1

    return Mesh(
        graph=g,
        subdivision_cnt=n,
        node_cnt=node_cnt,
        vertex_node_dict=vertex_node_dict,
        edge_node_array=edge_node_array,
        edge_step_array=np.array([e.length / n for e in g.edge_list]),
        dirichlet_node_array=np.array([vertex_node_dict[v.id] for v in g.dirichlet_vertex_list], dtype=np.intp),
    )


def _assemble(mesh: Mesh, diag: np.ndarray, off: np.ndarray) -> scipy.sparse.csr_matrix:
    left, right, _ = mesh.element_arrays()
    row = np.concatenate([left, left, right, right])
    col = np.concatenate([left, right, left, right])
    data = np.concatenate([diag, off, off, diag])
    # duplicates are summed by the coo -> csr conversion
    return scipy.sparse.coo_matrix((data, (row, col)), shape=(mesh.node_cnt, mesh.node_cnt)).tocsr()


def assemble_stiffness(mesh: Mesh) -> scipy.sparse.csr_matrix:
    _, _, step = mesh.element_arrays()
    return _assemble(mesh, 1.0 / step, -1.0 / step)


def assemble_mass(mesh: Mesh) -> scipy.sparse.csr_matrix:
    _, _, step = mesh.element_arrays()
    return _assemble(mesh, step / 3, step / 6)


def assemble_load(mesh: Mesh) -> np.ndarray:
    left, right, step = mesh.element_arrays()
    load = np.zeros(mesh.node_cnt)
    np.add.at(load, left, step / 2)
    np.add.at(load, right, step / 2)
    return load

from __future__ import annotations

import dataclasses
import logging
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg

from ..common.errors import NoDirichletVertexError, SingularSystemError
from ..graph_core import MetricGraph


LOG = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class LinearSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    free_vertex_id_list: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.free_vertex_id_list)


class KirchhoffKernel:
    """
    Kirchhoff system of a fixed graph skeleton, evaluated for any length vector.

    Vertex values solve, for each free vertex i,
        sum_j (u_i - u_j) / l_ij = 1/2 * sum_j l_ij
    with u = 0 on Dirichlet vertices. The optimizer calls it for thousands of length vectors,
    so everything is expressed on index arrays.
    """

    def __init__(self, edge_u: Sequence[int], edge_v: Sequence[int], dirichlet_mask: Sequence[bool]):
        self._dirichlet_mask = np.asarray(dirichlet_mask, dtype=bool)
        if not self._dirichlet_mask.any():
            raise NoDirichletVertexError()

        self._vertex_cnt = len(self._dirichlet_mask)
        self._edge_u = np.asarray(edge_u, dtype=np.intp)
        self._edge_v = np.asarray(edge_v, dtype=np.intp)

        free_index = np.full(self._vertex_cnt, -1, dtype=np.intp)
        free_pos = np.flatnonzero(~self._dirichlet_mask)
        free_index[free_pos] = np.arange(len(free_pos))
        self._free_pos = free_pos
        self._free_u = free_index[self._edge_u]
        self._free_v = free_index[self._edge_v]

    @staticmethod
    def from_graph(g: MetricGraph) -> KirchhoffKernel:
        index_dict = g.vertex_index_dict()
        return KirchhoffKernel(
            edge_u=[index_dict[e.u] for e in g.edge_list],
            edge_v=[index_dict[e.v] for e in g.edge_list],
            dirichlet_mask=[v.role.is_dirichlet for v in g.vertex_list],
        )

    @property
    def free_cnt(self) -> int:
        return len(self._free_pos)

    @property
    def free_pos(self) -> np.ndarray:
        return self._free_pos

    def assemble(self, length_array: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        size = self.free_cnt
        matrix = np.zeros((size, size))
        rhs = np.zeros(size)
        weight = 1.0 / length_array
        half = 0.5 * length_array

        for side in (self._free_u, self._free_v):
            mask = side >= 0
            np.add.at(matrix, (side[mask], side[mask]), weight[mask])
            np.add.at(rhs, side[mask], half[mask])

        both = (self._free_u >= 0) & (self._free_v >= 0)
        fu, fv = self._free_u[both], self._free_v[both]
        np.add.at(matrix, (fu, fv), -weight[both])
        np.add.at(matrix, (fv, fu), -weight[both])
        return matrix, rhs

    def vertex_values(self, length_array: np.ndarray) -> np.ndarray:
        value_array = np.zeros(self._vertex_cnt)
        if self.free_cnt == 0:
            return value_array

        matrix, rhs = self.assemble(length_array)
        try:
            value_array[self._free_pos] = scipy.linalg.solve(matrix, rhs, assume_a='sym')
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise SingularSystemError(f'Kirchhoff system cannot be solved: {exc}')
        return value_array

    def _edge_terms(self, value_array: np.ndarray):
        ui = value_array[self._edge_u]
        uj = value_array[self._edge_v]
        return ui, uj, uj - ui

    def energy(self, length_array: np.ndarray, value_array: np.ndarray = None) -> float:
        if value_array is None:
            value_array = self.vertex_values(length_array)
        ui, uj, _ = self._edge_terms(value_array)
        lengths = length_array
        # J = -1/2 int w, with int w = l (ui + uj) / 2 + l^3 / 12 on every edge
        return float(np.sum(-lengths * (ui + uj) / 4 - lengths ** 3 / 24))

    def energy_gradient(self, length_array: np.ndarray, value_array: np.ndarray = None) -> np.ndarray:
        """dJ/dl_e at the minimizer; vertex values do not move to first order."""
        if value_array is None:
            value_array = self.vertex_values(length_array)
        ui, uj, delta = self._edge_terms(value_array)
        lengths = length_array
        return -delta * delta / (2 * lengths * lengths) - lengths * lengths / 8 - (ui + uj) / 2


def assemble_kirchhoff_system(g: MetricGraph) -> LinearSystem:
    g.require_valid()
    kernel = KirchhoffKernel.from_graph(g)
    matrix, rhs = kernel.assemble(np.array([e.length for e in g.edge_list]))
    free_vertex_id_list = tuple(g.vertex_list[pos].id for pos in kernel.free_pos)
    return LinearSystem(matrix=matrix, rhs=rhs, free_vertex_id_list=free_vertex_id_list)

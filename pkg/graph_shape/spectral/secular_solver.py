from __future__ import annotations

import dataclasses
import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from ..common.config import Config
from ..common.errors import NoDirichletVertexError, SpectralBracketError, SpectralResonanceError
from ..common.utils import str_fmt_object
from ..graph_core import MetricGraph


LOG = logging.getLogger(__name__)

RESONANCE_TOL = 1e-12
# relative distance to pi*m/l that still counts as the same resonance
RESONANCE_MATCH_TOL = 1e-9


@dataclasses.dataclass(frozen=True, eq=False)
class SpectralSolution:
    lambda1: float
    k1: float
    vertex_value_dict: Dict[int, float]
    bracket: Tuple[float, float]
    vertex_vanishing: bool

    def __str__(self) -> str:
        return str_fmt_object(self)


class SecularKernel:
    """
    Vertex-eliminated secular matrix of a fixed skeleton:
        M(k)_ii = sum_j cot(k l_ij),   M(k)_ij = -1 / sin(k l_ij)
    over free vertices, Dirichlet vertices contribute only to the diagonal.
    """

    def __init__(self, edge_u, edge_v, dirichlet_mask, config: Optional[Config] = None):
        self._config = config or Config()
        self._dirichlet_mask = np.asarray(dirichlet_mask, dtype=bool)
        if not self._dirichlet_mask.any():
            raise NoDirichletVertexError()

        self._edge_u = np.asarray(edge_u, dtype=np.intp)
        self._edge_v = np.asarray(edge_v, dtype=np.intp)
        free_index = np.full(len(self._dirichlet_mask), -1, dtype=np.intp)
        self._free_pos = np.flatnonzero(~self._dirichlet_mask)
        free_index[self._free_pos] = np.arange(len(self._free_pos))
        self._free_u = free_index[self._edge_u]
        self._free_v = free_index[self._edge_v]

    @staticmethod
    def from_graph(g: MetricGraph, config: Optional[Config] = None) -> SecularKernel:
        index_dict = g.vertex_index_dict()
        return SecularKernel(
            edge_u=[index_dict[e.u] for e in g.edge_list],
            edge_v=[index_dict[e.v] for e in g.edge_list],
            dirichlet_mask=[v.role.is_dirichlet for v in g.vertex_list],
            config=config,
        )

    @property
    def free_cnt(self) -> int:
        return len(self._free_pos)

    @property
    def free_pos(self) -> np.ndarray:
        return self._free_pos

    def matrix(self, k: float, length_array: np.ndarray) -> np.ndarray:
        sin_array = np.sin(k * length_array)
        bad_idx = np.flatnonzero(np.abs(sin_array) < RESONANCE_TOL)
        if len(bad_idx):
            raise SpectralResonanceError(k, int(bad_idx[0]))
        cot_array = np.cos(k * length_array) / sin_array
        csc_array = 1.0 / sin_array

        size = self.free_cnt
        matrix = np.zeros((size, size))
        for side in (self._free_u, self._free_v):
            mask = side >= 0
            np.add.at(matrix, (side[mask], side[mask]), cot_array[mask])

        both = (self._free_u >= 0) & (self._free_v >= 0)
        fu, fv = self._free_u[both], self._free_v[both]
        np.add.at(matrix, (fu, fv), -csc_array[both])
        np.add.at(matrix, (fv, fu), -csc_array[both])
        return matrix

    def min_eigenvalue(self, k: float, length_array: np.ndarray) -> float:
        # an exact resonance at a scan point is stepped over
        for _ in range(8):
            try:
                matrix = self.matrix(k, length_array)
                return float(scipy.linalg.eigvalsh(matrix, subset_by_index=[0, 0])[0])
            except SpectralResonanceError as exc:
                LOG.warning(f'{exc}, perturb k')
                k *= 1.0 + 1e-9
        raise SpectralResonanceError(k, -1)

    def has_vertex_vanishing_mode(self, k: float, length_array: np.ndarray) -> bool:
        """
        Edges resonant at k carry c_e sin(k x) and vanish at every vertex; such a mode exists
        iff the Kirchhoff balance of those edges at free vertices has a nontrivial kernel.
        """
        ratio = k * length_array / math.pi
        order = np.rint(ratio)
        resonant = (order >= 1) & (np.abs(ratio - order) <= RESONANCE_MATCH_TOL * np.maximum(ratio, 1.0))
        edge_idx = np.flatnonzero(resonant)
        if not len(edge_idx):
            return False

        balance = np.zeros((max(self.free_cnt, 1), len(edge_idx)))
        for col, e in enumerate(edge_idx):
            if self._free_u[e] >= 0:
                balance[self._free_u[e], col] += 1.0
            if self._free_v[e] >= 0:
                balance[self._free_v[e], col] -= math.cos(order[e] * math.pi)
        return int(np.linalg.matrix_rank(balance)) < len(edge_idx)

    def _scan(self, k_lo: float, k_hi: float, step: float, length_array: np.ndarray, stop_k: float):
        prev_k, prev_value = k_lo, self.min_eigenvalue(k_lo, length_array)
        k = k_lo
        while k < k_hi:
            k = min(k + step, k_hi)
            if k >= stop_k:
                # the first pole of M(k): eigenvalues fall to -inf right before it
                k = stop_k * (1.0 - 1e-12)
            value = self.min_eigenvalue(k, length_array)
            if (prev_value > 0.0) and (value <= 0.0):
                return prev_k, k
            if k >= stop_k * (1.0 - 1e-12):
                return None
            prev_k, prev_value = k, value
        return None

    def _bisect(self, k_lo: float, k_hi: float, length_array: np.ndarray) -> Tuple[float, float]:
        tol = self._config.spectral_bisect_tol
        for _ in range(200):
            if k_hi - k_lo <= tol:
                break
            k_mid = 0.5 * (k_lo + k_hi)
            if self.min_eigenvalue(k_mid, length_array) > 0.0:
                k_lo = k_mid
            else:
                k_hi = k_mid
        return k_lo, k_hi

    def first_root(self, length_array: np.ndarray) -> Tuple[float, Tuple[float, float], bool]:
        """k1 with its bracket and whether the eigenfunction vanishes at every vertex."""
        l_max = float(np.max(length_array))
        l_min = float(np.min(length_array))
        first_pole = math.pi / l_max

        # the sine bump on the longest edge caps k1 at pi/l_max
        vanishing_k = first_pole if self.has_vertex_vanishing_mode(first_pole, length_array) else None
        if self.free_cnt == 0:
            return first_pole, (first_pole, first_pole), True

        delta = 1e-6 / l_max
        step = math.pi / (self._config.spectral_scan_div_cnt * l_max)
        window_hi = math.pi / l_min
        stop_k = vanishing_k if vanishing_k is not None else first_pole

        bracket = self._scan(delta, window_hi, step, length_array, stop_k)
        if (bracket is None) and (vanishing_k is not None):
            return vanishing_k, (vanishing_k, vanishing_k), True

        if bracket is None:
            LOG.warning(f'no sign change below {stop_k!r}, widen the scan window')
            bracket = self._scan(delta, 2 * math.pi / l_min, step, length_array, math.inf)
            if bracket is None:
                raise SpectralBracketError(2 * math.pi / l_min)

        k_lo, k_hi = self._bisect(bracket[0], bracket[1], length_array)
        k1 = 0.5 * (k_lo + k_hi)
        if (vanishing_k is not None) and (vanishing_k < k1):
            return vanishing_k, (vanishing_k, vanishing_k), True
        return k1, (k_lo, k_hi), False

    def lambda1(self, length_array: np.ndarray) -> float:
        k1, _, _ = self.first_root(length_array)
        return k1 * k1

    def eigenvector(self, k: float, length_array: np.ndarray) -> np.ndarray:
        """Free vertex values of the ground state normalized to unit L2 norm over the graph."""
        matrix = self.matrix(k, length_array)
        _, vector_array = scipy.linalg.eigh(matrix, subset_by_index=[0, 0])
        free_value = vector_array[:, 0]
        if free_value.sum() < 0.0:
            free_value = -free_value

        value_array = np.zeros(len(self._dirichlet_mask))
        value_array[self._free_pos] = free_value
        fi = value_array[self._edge_u]
        fj = value_array[self._edge_v]

        kl = k * length_array
        sin_kl = np.sin(kl)
        square_int = length_array / 2 - np.sin(2 * kl) / (4 * k)
        cross_int = (sin_kl - kl * np.cos(kl)) / (2 * k)
        norm_sq = np.sum(((fi * fi + fj * fj) * square_int + 2 * fi * fj * cross_int) / (sin_kl * sin_kl))
        return value_array / math.sqrt(norm_sq)


def secular_matrix(g: MetricGraph, k: float) -> np.ndarray:
    g.require_valid()
    kernel = SecularKernel.from_graph(g)
    return kernel.matrix(k, np.array([e.length for e in g.edge_list]))


def lambda1(g: MetricGraph, config: Optional[Config] = None) -> SpectralSolution:
    g.require_valid()
    kernel = SecularKernel.from_graph(g, config)
    length_array = np.array([e.length for e in g.edge_list])

    k1, bracket, vertex_vanishing = kernel.first_root(length_array)
    if vertex_vanishing:
        value_array = np.zeros(len(g.vertex_list))
    else:
        value_array = kernel.eigenvector(k1, length_array)

    vertex_value_dict = {g.vertex_list[pos].id: float(value_array[pos]) for pos in kernel.free_pos}
    return SpectralSolution(
        lambda1=k1 * k1,
        k1=k1,
        vertex_value_dict=vertex_value_dict,
        bracket=bracket,
        vertex_vanishing=vertex_vanishing,
    )

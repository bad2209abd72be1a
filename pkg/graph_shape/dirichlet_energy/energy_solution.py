from __future__ import annotations

import dataclasses
import logging
from typing import Dict, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from ..common.config import Config
from ..common.errors import EdgeRangeError, GraphShapeError, NoDirichletVertexError, SingularSystemError
from ..common.utils import str_fmt_object
from ..graph_core import GraphVertex, MetricGraph, VertexRole, total_length
from .kirchhoff_system import KirchhoffKernel


LOG = logging.getLogger(__name__)

DirectedEdge = Tuple[int, int]

# relative gap between the Dirichlet form and -1/2 int w that no rounding explains
INTEGRATION_GAP_LIMIT = 1e-6


@dataclasses.dataclass(frozen=True, eq=False)
class EnergySolution:
    graph: MetricGraph
    vertex_value_dict: Dict[int, float]
    edge_slope_dict: Dict[DirectedEdge, float]
    energy: float
    kirchhoff_residual_dict: Dict[int, float]
    min_value: float
    max_value: float
    integral: float
    dirichlet_integral: float
    l2_norm_sq: float

    def __str__(self) -> str:
        return str_fmt_object(self)

    @property
    def max_residual(self) -> float:
        return max((abs(r) for r in self.kirchhoff_residual_dict.values()), default=0.0)

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Start value, start slope and length of every edge taken in its u -> v direction."""
        start = np.array([self.vertex_value_dict[e.u] for e in self.graph.edge_list])
        slope = np.array([self.edge_slope_dict[(e.u, e.v)] for e in self.graph.edge_list])
        length = np.array([e.length for e in self.graph.edge_list])
        return start, slope, length


def _edge_parabola(u_start: float, slope: float) -> Polynomial:
    return Polynomial([u_start, slope, -0.5])


def solve_energy(g: MetricGraph, config: Optional[Config] = None) -> EnergySolution:
    """
    Torsion function of g and its energy J = -1/2 int w.

    The Dirichlet form 1/2 int |w'|^2 - int w is recomputed as a check. Short edges lose digits in it,
    so a relative gap above ENERGY_RESIDUAL_TOL is only logged; a gap above INTEGRATION_GAP_LIMIT
    means the Kirchhoff solve failed and raises SingularSystemError.
    """
    config = config or Config()
    g.require_valid()
    if not g.dirichlet_vertex_list:
        raise NoDirichletVertexError()

    kernel = KirchhoffKernel.from_graph(g)
    length_array = np.array([e.length for e in g.edge_list])
    value_array = kernel.vertex_values(length_array)
    index_dict = g.vertex_index_dict()
    vertex_value_dict = {v.id: float(value_array[index_dict[v.id]]) for v in g.vertex_list}
    for v in g.dirichlet_vertex_list:
        vertex_value_dict[v.id] = 0.0

    edge_slope_dict: Dict[DirectedEdge, float] = dict()
    residual_dict: Dict[int, float] = {v.id: 0.0 for v in g.free_vertex_list}
    form_energy = integral = dirichlet_integral = l2_norm_sq = 0.0
    max_value = 0.0

    for e in g.edge_list:
        ui, uj, length = vertex_value_dict[e.u], vertex_value_dict[e.v], e.length
        a_uv = (uj - ui) / length + length / 2
        a_vu = (ui - uj) / length + length / 2
        edge_slope_dict[(e.u, e.v)] = a_uv
        edge_slope_dict[(e.v, e.u)] = a_vu
        if e.u in residual_dict:
            residual_dict[e.u] += a_uv
        if e.v in residual_dict:
            residual_dict[e.v] += a_vu

        edge_integral = ui * length + a_uv * length ** 2 / 2 - length ** 3 / 6
        edge_dirichlet = a_uv ** 2 * length - a_uv * length ** 2 + length ** 3 / 3
        integral += edge_integral
        dirichlet_integral += edge_dirichlet
        form_energy += edge_dirichlet / 2 - edge_integral
        l2_norm_sq += float((_edge_parabola(ui, a_uv) ** 2).integ()(length))

        if 0.0 <= a_uv <= length:
            edge_max = ui + a_uv * a_uv / 2
        else:
            edge_max = max(ui, uj)
        max_value = max(max_value, edge_max)

    # w is concave on every edge, so its minimum sits at a vertex
    min_value = min(vertex_value_dict.values())

    energy = -integral / 2
    scale = 1.0 + abs(energy)
    gap = abs(form_energy - energy)
    if gap > INTEGRATION_GAP_LIMIT * scale:
        raise SingularSystemError(f'integration by parts identity is broken: Dirichlet form off by {gap!r}')
    elif gap > config.energy_residual_tol * scale:
        LOG.warning(f'integration by parts gap {gap!r} exceeds {config.energy_residual_tol!r}')

    return EnergySolution(
        graph=g,
        vertex_value_dict=vertex_value_dict,
        edge_slope_dict=edge_slope_dict,
        energy=energy,
        kirchhoff_residual_dict=residual_dict,
        min_value=min_value,
        max_value=max_value,
        integral=integral,
        dirichlet_integral=dirichlet_integral,
        l2_norm_sq=l2_norm_sq,
    )


def energy_gradient(g: MetricGraph) -> Dict[int, float]:
    g.require_valid()
    kernel = KirchhoffKernel.from_graph(g)
    length_array = np.array([e.length for e in g.edge_list])
    gradient = kernel.energy_gradient(length_array)
    return {e.id: float(value) for e, value in zip(g.edge_list, gradient)}


def evaluate(sol: EnergySolution, edge: DirectedEdge, x: float) -> Tuple[float, float]:
    slope = sol.edge_slope_dict.get(edge, None)
    if slope is None:
        raise GraphShapeError(f'unknown directed edge {edge}')
    graph_edge = sol.graph.edge_between(*edge)
    if not (0.0 <= x <= graph_edge.length):
        raise EdgeRangeError(graph_edge.id, x, graph_edge.length)

    u_start = sol.vertex_value_dict[edge[0]]
    return u_start + slope * x - x * x / 2, slope - x


def distribution_values(sol: EnergySolution, level: np.ndarray) -> np.ndarray:
    """mu(t) = |{w <= t}| for every level, edge by edge from the roots of u + a x - x^2/2 = t."""
    start, slope, length = sol.edge_arrays()
    level = np.atleast_1d(np.asarray(level, dtype=float))[:, None]

    disc = slope ** 2 - 2 * (level - start)
    root = np.sqrt(np.maximum(disc, 0.0))
    lo = np.clip(slope - root, 0.0, length)
    hi = np.clip(slope + root, 0.0, length)
    above = np.where(disc > 0.0, hi - lo, 0.0)
    return np.sum(length - above, axis=1)


def distribution_function(sol: EnergySolution, t: float) -> float:
    return float(distribution_values(sol, np.array([t]))[0])


def edge_slope_from_formula(l1: float, l2: float, l3: float) -> float:
    """Start slope of the edge l1 of a 3-star with Dirichlet leaves, leaf towards center."""
    return l1 / 2 + l2 * l3 * (l1 + l2 + l3) / (2 * (l1 * l2 + l2 * l3 + l3 * l1))


def att_energy(c: float) -> float:
    """J of w_c(x) = -x^2/2 + c x on [0, 1]."""
    return c * c / 2 - c + 1.0 / 3


def att_max_value(c: float) -> float:
    if c <= 0.0:
        return 0.0
    elif c <= 1.0:
        return c * c / 2
    return c - 0.5


def att_hypothesis(a: float, big_a: float) -> bool:
    """w_a(1) <= w_A(1) <= max w_a with a > 0, the window where J(w_A) <= J(w_a) is guaranteed."""
    if a <= 0.0:
        return False
    return (a - 0.5) <= (big_a - 0.5) <= att_max_value(a)


def dirichlet_set_energy(g: MetricGraph, vertex_id: int) -> Union[float, None]:
    """Energy after releasing the Dirichlet role of one vertex; None if no Dirichlet vertex remains."""
    vertex_list = tuple(
        GraphVertex(id=v.id, role=VertexRole.free()) if v.id == vertex_id else v
        for v in g.vertex_list
    )
    released = MetricGraph(vertex_list=vertex_list, edge_list=g.edge_list)
    if not released.dirichlet_vertex_list:
        return None
    return solve_energy(released).energy


def poincare_ratio(sol: EnergySolution) -> float:
    """||w||_2 / (L ||w'||_2), at most one on every solved graph."""
    graph_length = total_length(sol.graph)
    return float(np.sqrt(sol.l2_norm_sq) / (graph_length * np.sqrt(sol.dirichlet_integral)))

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
import scipy.optimize

from ..common.config import Config
from ..topology import Topology
from .optimum import Placement


LOG = logging.getLogger(__name__)


def feasibility_tol(length_array: np.ndarray, config: Config) -> float:
    return config.feasibility_tol_factor * (1.0 + float(np.sum(length_array)))


def initial_points(topology: Topology, pin_array: np.ndarray) -> np.ndarray:
    """Pins on their Dirichlet vertices, every free vertex at the pin centroid."""
    point_array = np.tile(pin_array.mean(axis=0), (topology.vertex_cnt, 1))
    for pin, idx in topology.pin_index_dict().items():
        point_array[idx] = pin_array[pin]
    return point_array


def edge_violation(topology: Topology, length_array: np.ndarray, point_array: np.ndarray) -> np.ndarray:
    edge_array = np.asarray(topology.edge_list, dtype=np.intp)
    diff = point_array[edge_array[:, 0]] - point_array[edge_array[:, 1]]
    return np.linalg.norm(diff, axis=1) - length_array


def path_violation_bound(topology: Topology, length_array: np.ndarray, pin_array: np.ndarray) -> float:
    """
    Lower bound of the max violation from tree paths between pins: a path shorter than the pin
    distance forces one of its edges to stretch by (distance - path) / edge count.
    """
    bound = -np.inf
    for first, second, edge_path in topology.pin_path_list():
        pin_first = topology.vertex_list[first].pin
        pin_second = topology.vertex_list[second].pin
        distance = float(np.linalg.norm(pin_array[pin_first] - pin_array[pin_second]))
        path = float(sum(length_array[e] for e in edge_path))
        bound = max(bound, (distance - path) / len(edge_path))
    return float(bound)


def _subgradient(
    topology: Topology,
    length_array: np.ndarray,
    point_array: np.ndarray,
    iter_cnt: int,
    stop_at_zero: bool,
):
    edge_array = np.asarray(topology.edge_list, dtype=np.intp)
    edge_u, edge_v = edge_array[:, 0], edge_array[:, 1]
    free_mask = ~np.asarray(topology.dirichlet_mask(), dtype=bool)

    best_point_array = point_array.copy()
    best_violation = np.inf
    base_step = float(np.max(length_array))

    for t in range(1, iter_cnt + 1):
        diff = point_array[edge_u] - point_array[edge_v]
        dist = np.linalg.norm(diff, axis=1)
        violation = dist - length_array
        e = int(np.argmax(violation))
        if violation[e] < best_violation:
            best_violation = float(violation[e])
            best_point_array = point_array.copy()
        if stop_at_zero and (best_violation <= 0.0):
            break

        u, v = edge_u[e], edge_v[e]
        if (dist[e] <= 0.0) or not (free_mask[u] or free_mask[v]):
            # nothing to move: pinned edge or coincident endpoints
            break

        direction = diff[e] / dist[e]
        step = base_step / t
        if free_mask[u]:
            point_array[u] -= step * direction
        if free_mask[v]:
            point_array[v] += step * direction

    return best_point_array, best_violation


def _polish_placement(topology: Topology, length_array: np.ndarray, point_array: np.ndarray, violation: float):
    """min s subject to (l_e + s)^2 >= |X_u - X_v|^2, a smooth restatement of the min-max placement."""
    free_idx = np.asarray(topology.free_index_list(), dtype=np.intp)
    free_cnt, dim = len(free_idx), point_array.shape[1]
    edge_array = np.asarray(topology.edge_list, dtype=np.intp)
    edge_u, edge_v = edge_array[:, 0], edge_array[:, 1]
    var_cnt = free_cnt * dim + 1

    def _unpack(y: np.ndarray) -> np.ndarray:
        result = point_array.copy()
        result[free_idx] = y[:-1].reshape(free_cnt, dim)
        return result

    free_pos = np.full(topology.vertex_cnt, -1, dtype=np.intp)
    free_pos[free_idx] = np.arange(free_cnt)

    def _constraint(y: np.ndarray) -> np.ndarray:
        points = _unpack(y)
        diff = points[edge_u] - points[edge_v]
        return (length_array + y[-1]) ** 2 - np.sum(diff * diff, axis=1)

    def _constraint_jac(y: np.ndarray) -> np.ndarray:
        points = _unpack(y)
        diff = points[edge_u] - points[edge_v]
        jac = np.zeros((len(length_array), var_cnt))
        jac[:, -1] = 2 * (length_array + y[-1])
        for row in range(len(length_array)):
            for vertex, sign in ((edge_u[row], -2.0), (edge_v[row], 2.0)):
                pos = free_pos[vertex]
                if pos >= 0:
                    jac[row, pos * dim:(pos + 1) * dim] = sign * diff[row]
        return jac

    y0 = np.concatenate([point_array[free_idx].ravel(), [violation]])
    objective_grad = np.zeros(var_cnt)
    objective_grad[-1] = 1.0
    bound_list = [(None, None)] * (var_cnt - 1) + [(-float(np.min(length_array)), None)]

    result = scipy.optimize.minimize(
        lambda y: y[-1], y0,
        jac=lambda y: objective_grad,
        method='SLSQP',
        bounds=bound_list,
        constraints=[{'type': 'ineq', 'fun': _constraint, 'jac': _constraint_jac}],
        options={'maxiter': 200, 'ftol': 1e-15},
    )
    polished = _unpack(result.x)
    return polished, float(np.max(edge_violation(topology, length_array, polished)))


def feasibility(
    topology: Topology,
    length_list: Sequence[float],
    pin_array: np.ndarray,
    config: Optional[Config] = None,
    iter_cnt: Optional[int] = None,
    warm_start: Optional[np.ndarray] = None,
    stop_at_zero: bool = False,
    polish: bool = True,
) -> Placement:
    """Placement of free vertices minimizing max_e(|X_u - X_v| - l_e) with pins fixed."""
    config = config or Config()
    length_array = np.asarray(length_list, dtype=float)
    tol = feasibility_tol(length_array, config)

    start = initial_points(topology, pin_array)
    if warm_start is not None:
        free_idx = list(topology.free_index_list())
        start[free_idx] = warm_start[free_idx]

    bound = path_violation_bound(topology, length_array, pin_array)
    if bound > tol:
        return Placement(point_array=start, max_violation=bound, feasible=False)

    if not topology.free_index_list():
        violation = float(np.max(edge_violation(topology, length_array, start)))
        return Placement(point_array=start, max_violation=violation, feasible=violation <= tol)

    point_array, violation = _subgradient(
        topology, length_array, start,
        iter_cnt=iter_cnt or config.feasibility_iter_cnt,
        stop_at_zero=stop_at_zero,
    )

    if polish and not (stop_at_zero and violation <= 0.0):
        try:
            polished, polished_violation = _polish_placement(topology, length_array, point_array, violation)
            if polished_violation < violation:
                point_array, violation = polished, polished_violation
        except (ValueError, np.linalg.LinAlgError) as exc:
            LOG.warning(f'placement polish failed: {exc}')

    return Placement(point_array=point_array, max_violation=violation, feasible=violation <= tol)

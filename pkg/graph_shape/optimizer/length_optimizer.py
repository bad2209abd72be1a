from __future__ import annotations

import logging
import math
import threading
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.optimize

from ..common.config import Config
from ..common.errors import GraphContractionError, GraphShapeError, TopologyError
from ..common.utils import logging_context
from ..dirichlet_energy import KirchhoffKernel
from ..graph_core import contract_short_edges
from ..spectral import SecularKernel
from ..topology import Topology, topology_from_graph
from .feasibility import edge_violation, feasibility, feasibility_tol, initial_points, path_violation_bound
from .optimum import Optimum, Placement
from .problem_spec import Functional, ProblemSpec


LOG = logging.getLogger(__name__)

# returned instead of inf so that Nelder-Mead keeps a finite simplex
_BAD_VALUE = 1e30


class FunctionalModel:
    """Energy or lambda1 of a fixed skeleton as a function of its edge lengths."""

    def __init__(self, topology: Topology, functional: Functional, config: Config):
        edge_array = np.asarray(topology.edge_list, dtype=np.intp)
        self._functional = functional
        if functional == Functional.Energy:
            self._kernel = KirchhoffKernel(edge_array[:, 0], edge_array[:, 1], topology.dirichlet_mask())
        else:
            self._kernel = SecularKernel(edge_array[:, 0], edge_array[:, 1], topology.dirichlet_mask(), config)

    def value(self, length_array: np.ndarray) -> float:
        if self._functional == Functional.Energy:
            return self._kernel.energy(length_array)
        return self._kernel.lambda1(length_array)

    def gradient(self, length_array: np.ndarray) -> np.ndarray:
        if self._functional == Functional.Energy:
            return self._kernel.energy_gradient(length_array)

        gradient = np.zeros(len(length_array))
        for e in range(len(length_array)):
            step = 1e-6 * length_array[e]
            hi, lo = length_array.copy(), length_array.copy()
            hi[e] += step
            lo[e] -= step
            gradient[e] = (self._kernel.lambda1(hi) - self._kernel.lambda1(lo)) / (2 * step)
        return gradient


class _WarmStart:
    def __init__(self, point_array: np.ndarray):
        self.point_array = point_array


class LengthOptimizer:
    """
    Minimizes the functional over lengths of one skeleton at a time. Results are memoized by
    canonical code, contracted skeletons are re-dispatched through the same memo.
    """

    def __init__(self, spec: ProblemSpec, config: Optional[Config] = None):
        self._spec = spec
        self._config = config or Config()
        self._pin_array = spec.pin_array()
        self._memo: Dict[str, Optimum] = dict()
        self._memo_lock = threading.Lock()

    @property
    def spec(self) -> ProblemSpec:
        return self._spec

    def run(self, topology: Topology) -> Optimum:
        code = topology.canonical_code
        with self._memo_lock:
            result = self._memo.get(code, None)
        if result is not None:
            return result

        with logging_context(topology=code, functional=self._spec.functional.value):
            try:
                result = self._optimize(topology)
            except GraphShapeError as exc:
                LOG.warning(f'skeleton {code} failed: {exc}')
                result = self._infeasible(topology, math.inf)

        with self._memo_lock:
            return self._memo.setdefault(code, result)

    def _infeasible(self, topology: Topology, violation: float) -> Optimum:
        length_array = np.full(topology.edge_cnt, self._spec.total_length / topology.edge_cnt)
        return Optimum(
            topology=topology,
            length_list=tuple(float(x) for x in length_array),
            placement=Placement(initial_points(topology, self._pin_array), violation, False),
            value=math.inf,
            functional=self._spec.functional,
            feasible=False,
        )

    def _path_lp_feasible(self, topology: Topology) -> bool:
        """Linear screen: some length vector on the simplex makes every pin path long enough."""
        path_list = topology.pin_path_list()
        if not path_list:
            return True

        edge_cnt = topology.edge_cnt
        total = self._spec.total_length
        a_ub = np.zeros((len(path_list), edge_cnt))
        b_ub = np.zeros(len(path_list))
        for row, (first, second, edge_path) in enumerate(path_list):
            a_ub[row, list(edge_path)] = -1.0
            pin_first = topology.vertex_list[first].pin
            pin_second = topology.vertex_list[second].pin
            b_ub[row] = -float(np.linalg.norm(self._pin_array[pin_first] - self._pin_array[pin_second]))

        result = scipy.optimize.linprog(
            c=np.zeros(edge_cnt),
            A_ub=a_ub, b_ub=b_ub,
            A_eq=np.ones((1, edge_cnt)), b_eq=[total],
            bounds=[(0.0, total)] * edge_cnt,
            method='highs',
        )
        return result.status == 0

    def _penalty(self, topology: Topology, length_array: np.ndarray, warm: _WarmStart) -> float:
        bound = path_violation_bound(topology, length_array, self._pin_array)
        if bound > 0.0:
            return bound

        placement = feasibility(
            topology, length_array, self._pin_array, self._config,
            iter_cnt=self._config.feasibility_penalty_iter_cnt,
            warm_start=warm.point_array,
            stop_at_zero=True,
            polish=False,
        )
        warm.point_array = placement.point_array
        return max(0.0, placement.max_violation)

    def _explore(self, topology: Topology, model: FunctionalModel) -> List[Tuple[float, np.ndarray]]:
        total = self._spec.total_length
        weight = self._config.optimizer_penalty_weight * total * total
        warm = _WarmStart(initial_points(topology, self._pin_array))

        def _objective(z: np.ndarray) -> float:
            # softmax keeps every trial point on the open simplex
            shifted = np.exp(z - np.max(z))
            length_array = np.maximum(total * shifted / shifted.sum(), total * 1e-12)
            try:
                value = model.value(length_array)
            except GraphShapeError:
                return _BAD_VALUE
            violation = self._penalty(topology, length_array, warm)
            return value + weight * violation * violation

        def _lengths(z: np.ndarray) -> np.ndarray:
            shifted = np.exp(z - np.max(z))
            return total * shifted / shifted.sum()

        result_list: List[Tuple[float, np.ndarray]] = list()
        for seed in range(self._config.optimizer_seed_cnt):
            rng = np.random.default_rng(seed)
            z0 = np.log(rng.dirichlet(np.ones(topology.edge_cnt)))
            with logging_context(seed=seed):
                result = scipy.optimize.minimize(
                    _objective, z0,
                    method='Nelder-Mead',
                    options={'maxfev': self._config.nelder_mead_max_fev, 'xatol': 1e-10, 'fatol': 1e-14, 'adaptive': True},
                )
                LOG.debug(f'start {seed}: penalized value {result.fun!r} after {result.nfev} evaluations')
            result_list.append((float(result.fun), _lengths(result.x)))

        result_list.sort(key=lambda item: item[0])
        return result_list

    def _distinct_candidates(self, result_list: List[Tuple[float, np.ndarray]]) -> List[np.ndarray]:
        tol = 1e-6 * self._spec.total_length
        candidate_list: List[np.ndarray] = list()
        for _, length_array in result_list:
            if all(np.max(np.abs(length_array - c)) > tol for c in candidate_list):
                candidate_list.append(length_array)
            if len(candidate_list) >= self._config.polish_candidate_cnt:
                break
        return candidate_list

    def _polish(self, topology: Topology, model: FunctionalModel, length_array: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Joint SLSQP over (lengths, free positions): sum l = L and l_e^2 >= |X_u - X_v|^2."""
        total = self._spec.total_length
        edge_cnt = topology.edge_cnt
        free_idx = np.asarray(topology.free_index_list(), dtype=np.intp)
        free_cnt, dim = len(free_idx), self._spec.dimension
        edge_array = np.asarray(topology.edge_list, dtype=np.intp)
        edge_u, edge_v = edge_array[:, 0], edge_array[:, 1]

        base = feasibility(
            topology, length_array, self._pin_array, self._config,
            iter_cnt=self._config.feasibility_penalty_iter_cnt * 10,
            stop_at_zero=True, polish=False,
        ).point_array
        free_pos = np.full(topology.vertex_cnt, -1, dtype=np.intp)
        free_pos[free_idx] = np.arange(free_cnt)

        def _unpack(y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            points = base.copy()
            if free_cnt:
                points[free_idx] = y[edge_cnt:].reshape(free_cnt, dim)
            return y[:edge_cnt], points

        def _objective(y: np.ndarray) -> float:
            return model.value(y[:edge_cnt])

        def _objective_jac(y: np.ndarray) -> np.ndarray:
            return np.concatenate([model.gradient(y[:edge_cnt]), np.zeros(free_cnt * dim)])

        def _reach(y: np.ndarray) -> np.ndarray:
            lengths, points = _unpack(y)
            diff = points[edge_u] - points[edge_v]
            return lengths * lengths - np.sum(diff * diff, axis=1)

        def _reach_jac(y: np.ndarray) -> np.ndarray:
            lengths, points = _unpack(y)
            diff = points[edge_u] - points[edge_v]
            jac = np.zeros((edge_cnt, len(y)))
            jac[np.arange(edge_cnt), np.arange(edge_cnt)] = 2 * lengths
            for row in range(edge_cnt):
                for vertex, sign in ((edge_u[row], -2.0), (edge_v[row], 2.0)):
                    pos = free_pos[vertex]
                    if pos >= 0:
                        col = edge_cnt + pos * dim
                        jac[row, col:col + dim] = sign * diff[row]
            return jac

        sum_jac = np.concatenate([np.ones(edge_cnt), np.zeros(free_cnt * dim)])
        lower = max(1e-9 * total, 10 * self._config.min_edge_length)
        y0 = np.concatenate([length_array, base[free_idx].ravel()])
        scale = 1.0 + abs(model.value(length_array))

        result = scipy.optimize.minimize(
            _objective, y0,
            jac=_objective_jac,
            method='SLSQP',
            bounds=[(lower, total)] * edge_cnt + [(None, None)] * (free_cnt * dim),
            constraints=[
                {'type': 'eq', 'fun': lambda y: np.sum(y[:edge_cnt]) - total, 'jac': lambda y: sum_jac},
                {'type': 'ineq', 'fun': _reach, 'jac': _reach_jac},
            ],
            options={'maxiter': self._config.polish_max_iter_cnt, 'ftol': 1e-15 * scale},
        )
        LOG.debug(f'polish: {result.message} value {result.fun!r}')
        lengths, points = _unpack(result.x)
        return np.maximum(lengths, lower), points

    def _repair(self, topology: Topology, length_array: np.ndarray, point_array: np.ndarray) -> np.ndarray:
        """Stretches short edges to their endpoint distance, paid for by the slack of the others."""
        total = self._spec.total_length
        dist = edge_violation(topology, np.zeros(topology.edge_cnt), point_array)
        need = np.maximum(dist - length_array, 0.0)
        lengths = length_array + need
        slack = np.maximum(lengths - dist, 0.0)
        excess = lengths.sum() - total
        if (excess > 0.0) and (slack.sum() > excess):
            lengths = lengths - slack * (excess / slack.sum())
        else:
            lengths = lengths * (total / lengths.sum())
        if np.any(need > 0.0):
            LOG.warning(f'repaired residual violation {float(need.max())!r}')
        return lengths

    def _finalize(
        self,
        topology: Topology,
        model: FunctionalModel,
        length_array: np.ndarray,
        point_array: np.ndarray,
    ) -> Optimum:
        lengths = self._repair(topology, length_array, point_array)
        violation = float(np.max(edge_violation(topology, lengths, point_array)))
        placement = Placement(point_array, violation, violation <= feasibility_tol(lengths, self._config))
        if not placement.feasible:
            placement = feasibility(topology, lengths, self._pin_array, self._config, warm_start=point_array)

        return Optimum(
            topology=topology,
            length_list=tuple(float(x) for x in lengths),
            placement=placement,
            value=model.value(lengths) if placement.feasible else math.inf,
            functional=self._spec.functional,
            feasible=placement.feasible,
        )

    def _contract(self, best: Optimum) -> Optional[Optimum]:
        eps = self._config.optimizer_contraction_ratio * self._spec.total_length
        try:
            graph = best.topology.to_metric_graph(best.length_list)
            contracted, length_list = topology_from_graph(contract_short_edges(graph, eps))
        except (GraphContractionError, TopologyError) as exc:
            LOG.warning(f'keep degenerate skeleton {best.topology}: {exc}')
            return None

        LOG.debug(f'contract {best.topology} into {contracted} ({sum(length_list)!r})')
        result = self.run(contracted)
        if not result.feasible:
            return None
        return Optimum(
            topology=result.topology,
            length_list=result.length_list,
            placement=result.placement,
            value=result.value,
            functional=result.functional,
            feasible=True,
            contracted_from=best.topology.canonical_code,
        )

    def _slack_gain(self, model: FunctionalModel, opt: Optimum) -> float:
        """
        Largest value change that edges short of their endpoint distance by the feasibility
        tolerance can buy. A degenerate skeleton ahead of its contraction by less than this
        wins only through the tolerance.
        """
        length_array = np.asarray(opt.length_list)
        try:
            gradient = model.gradient(length_array)
        except GraphShapeError:
            return self._config.optimizer_tie_tol
        gain = float(np.sum(np.abs(gradient))) * feasibility_tol(length_array, self._config)
        return max(gain, self._config.optimizer_tie_tol)

    def _optimize(self, topology: Topology) -> Optimum:
        if topology.dirichlet_cnt != self._spec.pin_cnt:
            raise TopologyError(f'skeleton has {topology.dirichlet_cnt} pins, the problem {self._spec.pin_cnt}')
        if not self._path_lp_feasible(topology):
            LOG.debug(f'{topology} cannot reach the pins for any lengths')
            return self._infeasible(topology, math.inf)

        model = FunctionalModel(topology, self._spec.functional, self._config)
        total = self._spec.total_length
        if topology.edge_cnt == 1:
            length_array = np.array([total])
            placement = feasibility(topology, length_array, self._pin_array, self._config)
            return self._finalize(topology, model, length_array, placement.point_array)

        candidate_list = self._distinct_candidates(self._explore(topology, model))

        best: Optional[Optimum] = None
        for length_array in candidate_list:
            try:
                lengths, points = self._polish(topology, model, length_array)
            except (GraphShapeError, ValueError, np.linalg.LinAlgError) as exc:
                LOG.warning(f'polish failed: {exc}')
                lengths = length_array
                points = feasibility(topology, lengths, self._pin_array, self._config).point_array
            result = self._finalize(topology, model, lengths, points)
            if (best is None) or _better(result, best):
                best = result

        if best.feasible and (min(best.length_list) < self._config.optimizer_contraction_ratio * total):
            contracted = self._contract(best)
            if (contracted is not None) and (contracted.value <= best.value + self._slack_gain(model, best)):
                return contracted

        LOG.debug(f'{topology}: value {best.value!r}, feasible {best.feasible}')
        return best


def _better(first: Optimum, second: Optimum) -> bool:
    if first.feasible != second.feasible:
        return first.feasible
    if first.feasible:
        return first.value < second.value
    return first.placement.max_violation < second.placement.max_violation


def optimize_lengths(topology: Topology, spec: ProblemSpec, config: Optional[Config] = None) -> Optimum:
    return LengthOptimizer(spec, config).run(topology)

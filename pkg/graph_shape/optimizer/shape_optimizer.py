from __future__ import annotations

import dataclasses
import logging
from multiprocessing.dummy import Pool as ThreadPool
from typing import List, Optional, Sequence

from ..common.config import Config
from ..common.errors import InfeasibleSpecError, TopologyError
from ..dirichlet_energy import audit_optimality, solve_energy
from ..topology import Topology, TopologyCatalog
from .embedding_check import explain_embedding
from .length_optimizer import LengthOptimizer
from .optimum import Optimum
from .problem_spec import ProblemSpec, validate_problem


LOG = logging.getLogger(__name__)


def select_optimum(result_list: Sequence[Optimum], tie_tol: float) -> Optimum:
    """Minimum value; near ties go to fewer edges, then to the canonical code order."""
    best_value = min(r.value for r in result_list)
    tie_list = [r for r in result_list if r.value <= best_value + tie_tol * (1.0 + abs(best_value))]
    return min(tie_list, key=lambda r: (r.edge_cnt, r.topology.canonical_code))


def _topology_list(spec: ProblemSpec, topology_filter: Optional[Sequence[str]]) -> List[Topology]:
    topology_list = TopologyCatalog().get_topology_list(spec.pin_cnt)
    if topology_filter is None:
        return topology_list

    code_set = set(topology_filter)
    topology_list = [t for t in topology_list if t.canonical_code in code_set]
    if not topology_list:
        raise TopologyError(f'no skeleton with {spec.pin_cnt} pins matches {sorted(code_set)}')
    return topology_list


def optimize(spec: ProblemSpec, config: Optional[Config] = None, topology_filter: Optional[Sequence[str]] = None) -> Optimum:
    config = config or Config()
    validate_problem(spec)
    if spec.total_length < spec.max_pin_distance():
        raise InfeasibleSpecError(spec.total_length, 'pins are farther apart than the total length')

    topology_list = _topology_list(spec, topology_filter)
    optimizer = LengthOptimizer(spec, config)
    LOG.info(f'optimize {spec.functional.value} over {len(topology_list)} skeletons, L={spec.total_length!r}')

    with ThreadPool(min(config.optimizer_worker_cnt, len(topology_list))) as pool:
        result_list = pool.map(optimizer.run, topology_list)

    feasible_list = [r for r in result_list if r.feasible]
    if not feasible_list:
        raise InfeasibleSpecError(spec.total_length, 'no skeleton admits a placement')

    best = select_optimum(feasible_list, config.optimizer_tie_tol)
    verdict = explain_embedding(best)
    audit = audit_optimality(best.graph(), solve_energy(best.graph(), config))
    LOG.info(f'winner {best.topology}: {best.value!r}, {verdict.embeddability.value}')
    return dataclasses.replace(best, embeddable=verdict.embeddability, audit=audit)

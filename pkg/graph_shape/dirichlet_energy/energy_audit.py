from __future__ import annotations

import dataclasses
import logging
from typing import Any, Dict, Optional

from ..graph_core import MetricGraph, is_tree, merge_degree_two, total_length
from .energy_solution import EnergySolution


LOG = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class AuditReport:
    is_tree: bool
    neumann_leaf_ok: bool
    neumann_hosts_max: bool
    lipschitz_ok: bool
    nonnegative_ok: bool
    kirchhoff_ok: bool
    interior_max_ok: bool
    vertex_count_ok: bool
    dirichlet_leaf_flag: bool
    neumann_vertex_id: Optional[int]
    derivative_sup: float
    max_residual: float

    @property
    def solution_checks_passed(self) -> bool:
        return self.lipschitz_ok and self.nonnegative_ok and self.kirchhoff_ok

    @property
    def passed(self) -> bool:
        return all((
            self.is_tree, self.neumann_leaf_ok, self.neumann_hosts_max, self.lipschitz_ok,
            self.nonnegative_ok, self.kirchhoff_ok, self.interior_max_ok, self.vertex_count_ok,
        ))

    def as_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def audit_optimality(g: MetricGraph, sol: EnergySolution, tol: float = 1e-12) -> AuditReport:
    graph_length = total_length(g)
    scale = 1.0 + graph_length

    free_leaf_list = [v.id for v in g.free_vertex_list if g.degree(v.id) == 1]
    neumann_vertex_id = free_leaf_list[0] if len(free_leaf_list) == 1 else None

    neumann_hosts_max = True
    if neumann_vertex_id is not None:
        leaf_value = sol.vertex_value_dict[neumann_vertex_id]
        neumann_hosts_max = sol.max_value - leaf_value <= tol * (1.0 + abs(sol.max_value))

    derivative_sup = 0.0
    interior_max = False
    for e in g.edge_list:
        slope = sol.edge_slope_dict[(e.u, e.v)]
        derivative_sup = max(derivative_sup, abs(slope), abs(slope - e.length))

        edge_tol = 1e-9 * e.length
        if edge_tol < slope < e.length - edge_tol:
            peak = sol.vertex_value_dict[e.u] + slope * slope / 2
            if sol.max_value - peak <= tol * (1.0 + abs(sol.max_value)):
                interior_max = True

    # the sharper structural counts are stated for graphs without free degree-two vertices
    smooth = merge_degree_two(g)
    dirichlet_cnt = len(smooth.dirichlet_vertex_list)
    vertex_cnt, edge_cnt = len(smooth.vertex_list), len(smooth.edge_list)
    if neumann_vertex_id is None:
        vertex_count_ok = (vertex_cnt <= max(2 * dirichlet_cnt - 2, 2)) and (edge_cnt <= max(2 * dirichlet_cnt - 3, 1))
    else:
        vertex_count_ok = (vertex_cnt <= 2 * dirichlet_cnt) and (edge_cnt <= 2 * dirichlet_cnt - 1)

    report = AuditReport(
        is_tree=is_tree(g),
        neumann_leaf_ok=len(free_leaf_list) <= 1,
        neumann_hosts_max=neumann_hosts_max,
        lipschitz_ok=derivative_sup <= graph_length + tol * scale,
        nonnegative_ok=sol.min_value >= -tol,
        kirchhoff_ok=sol.max_residual <= tol * scale,
        interior_max_ok=not (interior_max and (neumann_vertex_id is not None)),
        vertex_count_ok=vertex_count_ok,
        dirichlet_leaf_flag=all(g.degree(v.id) == 1 for v in g.dirichlet_vertex_list),
        neumann_vertex_id=neumann_vertex_id,
        derivative_sup=derivative_sup,
        max_residual=sol.max_residual,
    )
    if not report.passed:
        LOG.debug(f'audit failed: {report}')
    return report

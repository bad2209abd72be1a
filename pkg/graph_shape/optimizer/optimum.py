from __future__ import annotations

import dataclasses
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..common.utils import cached_method, str_fmt_object
from ..dirichlet_energy import AuditReport
from ..graph_core import MetricGraph
from ..topology import Topology
from .problem_spec import Functional


class Embeddability(Enum):
    Embeddable = 'embeddable'
    ImmersionOnly = 'immersion-only'


@dataclasses.dataclass(frozen=True, eq=False)
class Placement:
    point_array: np.ndarray
    max_violation: float
    feasible: bool

    def __str__(self) -> str:
        return f'Placement(max_violation={self.max_violation!r}, feasible={self.feasible})'

    def point(self, vertex_idx: int) -> Tuple[float, ...]:
        return tuple(float(x) for x in self.point_array[vertex_idx])


@dataclasses.dataclass(frozen=True, eq=False)
class Optimum:
    topology: Topology
    length_list: Tuple[float, ...]
    placement: Placement
    value: float
    functional: Functional
    feasible: bool = True
    embeddable: Optional[Embeddability] = None
    audit: Optional[AuditReport] = None
    contracted_from: Optional[str] = None

    def __str__(self) -> str:
        return str_fmt_object(self)

    @property
    def edge_cnt(self) -> int:
        return self.topology.edge_cnt

    @property
    def total_length(self) -> float:
        return float(sum(self.length_list))

    @cached_method
    def graph(self) -> MetricGraph:
        return self.topology.to_metric_graph(self.length_list)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'topology': self.topology.as_dict(),
            'lengths': list(self.length_list),
            'placement': [list(self.placement.point(idx)) for idx in range(self.topology.vertex_cnt)],
            'max_violation': self.placement.max_violation,
            'functional': self.functional.value,
            'value': self.value,
            'embeddable': None if self.embeddable is None else self.embeddable.value,
            'contracted_from': self.contracted_from,
        }

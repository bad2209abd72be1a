from __future__ import annotations

import os
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from ..common.config import Config
from ..dirichlet_energy import solve_energy
from ..graph_core import MetricGraph, VertexRole
from ..optimizer import Functional, Optimum, ProblemSpec, feasibility
from ..topology import topology_from_graph


def segment_graph(length: float = 1.0) -> MetricGraph:
    """D1 at one end, free at the other."""
    return MetricGraph.from_lists(
        [(0, VertexRole.dirichlet(0)), (1, VertexRole.free())],
        [(0, 0, 1, length)],
    )


def t_graph(distance: float = 1.0, total: float = 2.0) -> MetricGraph:
    """Two pins joined through a junction at the middle, the rest of the length is a free leaf."""
    return MetricGraph.from_lists(
        [(0, VertexRole.dirichlet(0)), (1, VertexRole.dirichlet(1)), (2, VertexRole.free()), (3, VertexRole.free())],
        [(0, 0, 2, distance / 2), (1, 1, 2, distance / 2), (2, 2, 3, total - distance)],
    )


def star_graph(length_list: Sequence[float]) -> MetricGraph:
    """Every leaf is a pin, the center is free."""
    center = len(length_list)
    vertex_iter = [(idx, VertexRole.dirichlet(idx)) for idx in range(center)] + [(center, VertexRole.free())]
    edge_iter = [(idx, idx, center, length) for idx, length in enumerate(length_list)]
    return MetricGraph.from_lists(vertex_iter, edge_iter)


def random_tree(rng: np.random.Generator, max_vertex_cnt: int = 8, max_pin_cnt: int = 4) -> MetricGraph:
    vertex_cnt = int(rng.integers(2, max_vertex_cnt + 1))
    if vertex_cnt == 2:
        tree = nx.Graph([(0, 1)])
    else:
        tree = nx.from_prufer_sequence([int(x) for x in rng.integers(0, vertex_cnt, size=vertex_cnt - 2)])

    pin_cnt = int(rng.integers(1, min(max_pin_cnt, vertex_cnt) + 1))
    pin_vertex_list = [int(x) for x in rng.permutation(vertex_cnt)[:pin_cnt]]
    vertex_iter = [
        (v, VertexRole.dirichlet(pin_vertex_list.index(v)) if v in pin_vertex_list else VertexRole.free())
        for v in range(vertex_cnt)
    ]
    edge_iter = [(idx, u, v, float(rng.uniform(0.1, 2.0))) for idx, (u, v) in enumerate(sorted(tree.edges()))]
    return MetricGraph.from_lists(vertex_iter, edge_iter)


def problem(pin_list, total_length: float, functional: Functional = Functional.Energy) -> ProblemSpec:
    pin_list = tuple(tuple(float(x) for x in pin) for pin in pin_list)
    return ProblemSpec(dimension=len(pin_list[0]), pin_list=pin_list, total_length=total_length, functional=functional)


def optimum_from_graph(g: MetricGraph, pin_list, config: Optional[Config] = None) -> Optimum:
    """Wraps a hand-built energy shape the way the optimizer reports it, with a computed placement."""
    topology, length_list = topology_from_graph(g)
    placement = feasibility(topology, length_list, np.array(pin_list, dtype=float), config)
    return Optimum(
        topology=topology,
        length_list=length_list,
        placement=placement,
        value=solve_energy(g).energy,
        functional=Functional.Energy,
        feasible=placement.feasible,
    )


def fast_config(**override: str) -> Config:
    """Fewer multi-starts for the optimizer tests."""
    env = dict(os.environ)
    env.update({
        'OPTIMIZER_SEED_COUNT': '6',
        'POLISH_CANDIDATE_COUNT': '2',
        'NELDER_MEAD_MAX_FEV': '200',
        'FEASIBILITY_ITERATIONS': '4000',
    })
    env.update(override)
    return Config(env=env)

from __future__ import annotations

import dataclasses
from typing import Optional

import numpy as np

from ..common.config import Config
from ..dirichlet_energy import distribution_values, solve_energy
from ..graph_core import MetricGraph, total_length


REARRANGEMENT_TOL = 1e-6


@dataclasses.dataclass(frozen=True)
class RearrangementResult:
    graph_energy: float
    segment_energy: float
    ok: bool


def rearrangement_check(g: MetricGraph, config: Optional[Config] = None) -> RearrangementResult:
    """
    Monotone rearrangement of the energy function onto [0, L] with Dirichlet end at 0.

    The profile v is the inverse of the distribution function mu sampled on a level grid that
    clusters near max w, where mu has a square-root corner. The segment functional of the
    piecewise linear profile through (mu_j, t_j) is
        1/2 * sum (dt^2 / dmu) - sum avg(t) * dmu.
    """
    config = config or Config()
    sol = solve_energy(g, config)
    graph_length = total_length(g)

    grid_size = config.rearrangement_grid_size
    ratio = np.arange(grid_size + 1) / grid_size
    level = sol.max_value * (1.0 - (1.0 - ratio) ** 2)
    measure = distribution_values(sol, level)
    measure[0] = 0.0
    measure[-1] = graph_length

    d_level = np.diff(level)
    d_measure = np.diff(measure)
    positive = d_measure > 0.0
    dirichlet_part = 0.5 * np.sum(d_level[positive] ** 2 / d_measure[positive])
    integral_part = np.sum(0.5 * (level[1:] + level[:-1]) * d_measure)
    segment_energy = float(dirichlet_part - integral_part)

    return RearrangementResult(
        graph_energy=sol.energy,
        segment_energy=segment_energy,
        ok=segment_energy <= sol.energy + REARRANGEMENT_TOL,
    )

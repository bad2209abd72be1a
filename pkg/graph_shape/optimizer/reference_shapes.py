"""Closed-form candidate shapes used as oracles for the optimizer."""
from __future__ import annotations

import dataclasses
import logging
import math
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.optimize

from ..common.errors import GraphShapeError
from ..common.utils import str_fmt_object
from ..dirichlet_energy import solve_energy
from ..graph_core import MetricGraph, VertexRole


LOG = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
TRIANGLE_PINS = ((-SQRT3 / 3, 0.0), (SQRT3 / 6, -0.5), (SQRT3 / 6, 0.5))
# 3-star with every edge taut exists for L in [sqrt(3), 1 + sqrt(3)/2]
TRIANGLE_STAR_MAX_LENGTH = 1.0 + SQRT3 / 2


@dataclasses.dataclass(frozen=True, eq=False)
class FamilyMember:
    parameter: float
    energy: float
    graph: MetricGraph

    def __str__(self) -> str:
        return str_fmt_object(self)


def _tree(pin_cnt: int, free_cnt: int, edge_list: Sequence[Tuple[int, int, float]]) -> MetricGraph:
    """Pins take ids 0..pin_cnt-1 in pin order, free vertices follow."""
    vertex_iter = [(idx, VertexRole.dirichlet(idx)) for idx in range(pin_cnt)]
    vertex_iter += [(pin_cnt + idx, VertexRole.free()) for idx in range(free_cnt)]
    edge_iter = [(idx, u, v, length) for idx, (u, v, length) in enumerate(edge_list)]
    return MetricGraph.from_lists(vertex_iter, edge_iter)


def collinear_pins(n: float) -> Tuple[Tuple[float, float], ...]:
    return (-1.0, 0.0), (1.0, 0.0), (float(n), 0.0)


def collinear_gamma1(n: float) -> MetricGraph:
    """3-star with lengths (1, 1, n) centered at the origin."""
    return _tree(3, 1, [(0, 3, 1.0), (1, 3, 1.0), (2, 3, float(n))])


def collinear_gamma2(n: float, alpha: float, beta: float) -> MetricGraph:
    if not (0.0 < alpha < 1.0 and alpha < beta < n):
        raise GraphShapeError(f'expected 0 < alpha < 1 and alpha < beta < n, got {alpha!r}, {beta!r}')
    return _tree(3, 3, [
        (0, 3, 1.0 + alpha),
        (1, 3, 1.0 - alpha),
        (2, 4, n - beta),
        (3, 4, beta - alpha),
        (4, 5, alpha),
    ])


def collinear_chain(n: float) -> MetricGraph:
    """D1-D2 taut, D2 and D3 joined through a junction that carries the Neumann edge."""
    half = (n - 1.0) / 2
    return _tree(3, 2, [(0, 1, 2.0), (1, 3, half), (2, 3, half), (3, 4, 1.0)])


def compare_collinear_candidates(n: int) -> Tuple[float, float]:
    """Exact energies of the 3-star and of the chain for pins (-1, 0), (1, 0), (n, 0) and L = n + 2."""
    if n < 2:
        raise GraphShapeError(f'n must be at least 2, got {n}')
    gamma1_energy = solve_energy(collinear_gamma1(n)).energy
    chain_energy = solve_energy(collinear_chain(n)).energy
    LOG.debug(f'n={n}: star {gamma1_energy!r}, chain {chain_energy!r}')
    return gamma1_energy, chain_energy


def two_pin_t_graph(d1: Sequence[float], d2: Sequence[float], total_length: float) -> Tuple[MetricGraph, np.ndarray]:
    """Two taut half-segments meeting at the midpoint, the remaining length hangs off as a free leaf."""
    d1, d2 = np.asarray(d1, dtype=float), np.asarray(d2, dtype=float)
    distance = float(np.linalg.norm(d1 - d2))
    if total_length <= distance:
        raise GraphShapeError(f'total length {total_length!r} does not exceed the pin distance {distance!r}')
    graph = _tree(2, 2, [(0, 2, distance / 2), (1, 2, distance / 2), (2, 3, total_length - distance)])
    return graph, (d1 + d2) / 2


def triangle_gamma1(x: float) -> MetricGraph:
    if not (0.5 <= x <= 1.0 / SQRT3):
        raise GraphShapeError(f'x must lie in [1/2, 1/sqrt(3)], got {x!r}')
    l14 = SQRT3 / 2 - math.sqrt(max(x * x - 0.25, 0.0))
    return _tree(3, 1, [(0, 3, l14), (1, 3, x), (2, 3, x)])


def triangle_gamma1_parameter(total_length: float) -> Optional[float]:
    """x with l14(x) + 2x = L, None outside the star window."""
    if not (SQRT3 <= total_length <= TRIANGLE_STAR_MAX_LENGTH):
        return None

    def _residual(x: float) -> float:
        return SQRT3 / 2 - math.sqrt(max(x * x - 0.25, 0.0)) + 2 * x - total_length

    # decreasing on the window, rounding at the window ends may hide the sign change
    lo, hi = 0.5, 1.0 / SQRT3
    if _residual(lo) <= 0.0:
        return lo
    if _residual(hi) >= 0.0:
        return hi
    return scipy.optimize.brentq(_residual, lo, hi, xtol=1e-15)


def triangle_gamma2(total_length: float) -> MetricGraph:
    if total_length <= SQRT3:
        raise GraphShapeError(f'total length must exceed sqrt(3), got {total_length!r}')
    leg = 1.0 / SQRT3
    return _tree(3, 2, [(0, 3, leg), (1, 3, leg), (2, 3, leg), (3, 4, total_length - SQRT3)])


def triangle_gamma3_lengths(x: float, total_length: float) -> Optional[Tuple[float, float, float, float, float]]:
    """(l24, l34, l15, l45, l56), None where some length is not positive."""
    if (x < 0.5) or (2 * total_length - 3 * x <= 0.0):
        return None
    root = math.sqrt(4 * x * x - 1.0)
    shift = total_length * x / (2 * (2 * total_length - 3 * x))
    l15 = shift + SQRT3 / 4 - root / 4
    l45 = SQRT3 / 4 - shift - root / 4
    l56 = total_length - 2 * x - SQRT3 / 2 + root / 2
    length_tuple = (x, x, l15, l45, l56)
    if min(length_tuple) <= 0.0:
        return None
    return length_tuple


def triangle_gamma3(x: float, total_length: float) -> MetricGraph:
    length_tuple = triangle_gamma3_lengths(x, total_length)
    if length_tuple is None:
        raise GraphShapeError(f'no positive lengths for x={x!r}, L={total_length!r}')
    l24, l34, l15, l45, l56 = length_tuple
    return _tree(3, 3, [(1, 3, l24), (2, 3, l34), (0, 4, l15), (3, 4, l45), (4, 5, l56)])


def _member(parameter: float, graph: MetricGraph) -> FamilyMember:
    return FamilyMember(parameter=parameter, energy=solve_energy(graph).energy, graph=graph)


def _scan_gamma3(total_length: float, grid_size: int) -> Optional[FamilyMember]:
    x_array = np.linspace(0.5, 2 * total_length / 3, grid_size + 1)[:-1]
    valid_list = [float(x) for x in x_array if triangle_gamma3_lengths(float(x), total_length) is not None]
    if not valid_list:
        return None

    best = min((_member(x, triangle_gamma3(x, total_length)) for x in valid_list), key=lambda m: m.energy)
    step = float(x_array[1] - x_array[0])

    def _energy(x: float) -> float:
        if triangle_gamma3_lengths(x, total_length) is None:
            return math.inf
        return solve_energy(triangle_gamma3(x, total_length)).energy

    # refine around the best grid point
    refined = scipy.optimize.minimize_scalar(
        _energy, bounds=(max(0.5, best.parameter - step), best.parameter + step),
        method='bounded', options={'xatol': 1e-12},
    )
    if refined.success and math.isfinite(refined.fun) and (refined.fun < best.energy):
        best = _member(float(refined.x), triangle_gamma3(float(refined.x), total_length))
    return best


def scan_triangle_family(family: str, total_length: float, grid_size: int = 2000) -> Optional[FamilyMember]:
    """Lowest energy member of one equilateral-triangle family at the given total length."""
    if family == 'gamma1':
        x = triangle_gamma1_parameter(total_length)
        return None if x is None else _member(x, triangle_gamma1(x))
    elif family == 'gamma2':
        return None if total_length <= SQRT3 else _member(total_length - SQRT3, triangle_gamma2(total_length))
    elif family == 'gamma3':
        return _scan_gamma3(total_length, grid_size)
    raise GraphShapeError(f'unknown triangle family "{family}"')


TRIANGLE_FAMILY_DICT: Dict[str, Callable[..., MetricGraph]] = {
    'gamma1': triangle_gamma1,
    'gamma2': triangle_gamma2,
    'gamma3': triangle_gamma3,
}


def best_triangle_family(total_length: float, grid_size: int = 2000) -> Tuple[str, FamilyMember]:
    member_list = [
        (family, scan_triangle_family(family, total_length, grid_size))
        for family in sorted(TRIANGLE_FAMILY_DICT)
    ]
    member_list = [(family, member) for family, member in member_list if member is not None]
    if not member_list:
        raise GraphShapeError(f'no triangle family member at L={total_length!r}')
    return min(member_list, key=lambda item: item[1].energy)


def crossover_length(lo: float = 1.8, hi: float = 2.2, tol: float = 1e-4, grid_size: int = 400) -> float:
    """Smallest total length where the best triangle shape carries a Neumann leaf."""
    def _has_leaf(total_length: float) -> bool:
        return best_triangle_family(total_length, grid_size)[0] != 'gamma1'

    if _has_leaf(lo) or not _has_leaf(hi):
        raise GraphShapeError(f'no shape change inside [{lo!r}, {hi!r}]')
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _has_leaf(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.optimize

from ..common.utils import str_fmt_object
from .optimum import Embeddability, Optimum


LOG = logging.getLogger(__name__)

LEAF_DIRECTION_CNT = 72
ARC_PIECE_CNT = 64
# share of a piece cut off next to a common endpoint before the distance test
_SHARED_END_CUT = 1e-3


@dataclasses.dataclass(frozen=True, eq=False)
class EmbeddingVerdict:
    embeddability: Embeddability
    taut_edge_list: Tuple[int, ...]
    slack_edge_list: Tuple[int, ...]
    reason: str
    point_array: np.ndarray
    polyline_dict: Dict[int, np.ndarray]

    def __str__(self) -> str:
        return str_fmt_object(self)


@dataclasses.dataclass(frozen=True)
class _Piece:
    edge_idx: int
    start: np.ndarray
    end: np.ndarray


def _segment_distance(p0: np.ndarray, p1: np.ndarray, q0: np.ndarray, q1: np.ndarray) -> float:
    """Closest distance of two segments in any dimension."""
    d1, d2, r = p1 - p0, q1 - q0, p0 - q0
    a, e, f = float(d1 @ d1), float(d2 @ d2), float(d2 @ r)
    if (a <= 1e-30) and (e <= 1e-30):
        return float(np.linalg.norm(r))
    if a <= 1e-30:
        s, t = 0.0, min(max(f / e, 0.0), 1.0)
    else:
        c = float(d1 @ r)
        if e <= 1e-30:
            s, t = min(max(-c / a, 0.0), 1.0), 0.0
        else:
            b = float(d1 @ d2)
            denom = a * e - b * b
            s = min(max((b * f - c * e) / denom, 0.0), 1.0) if denom > 1e-30 else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                s, t = min(max(-c / a, 0.0), 1.0), 0.0
            elif t > 1.0:
                s, t = min(max((b - c) / a, 0.0), 1.0), 1.0
    return float(np.linalg.norm((p0 + d1 * s) - (q0 + d2 * t)))


def _point_segment_distance(x: np.ndarray, p0: np.ndarray, p1: np.ndarray) -> float:
    return _segment_distance(x, x, p0, p1)


def _cut_shared(p0: np.ndarray, p1: np.ndarray, shared: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if np.linalg.norm(p0 - shared) <= np.linalg.norm(p1 - shared):
        return p0 + (p1 - p0) * _SHARED_END_CUT, p1
    return p0, p1 + (p0 - p1) * _SHARED_END_CUT


def _pieces_conflict(first: _Piece, second: _Piece, tol: float) -> bool:
    p0, p1, q0, q1 = first.start, first.end, second.start, second.end
    shared_list = [
        p for p in (p0, p1)
        if min(np.linalg.norm(p - q0), np.linalg.norm(p - q1)) <= tol
    ]
    if len(shared_list) >= 2:
        return True
    if len(shared_list) == 1:
        p0, p1 = _cut_shared(p0, p1, shared_list[0])
        q0, q1 = _cut_shared(q0, q1, shared_list[0])
        # pieces meeting at an angle keep a gap proportional to the cut
        return _segment_distance(p0, p1, q0, q1) <= tol
    return _segment_distance(p0, p1, q0, q1) <= tol


class _Drawing:
    def __init__(self, point_array: np.ndarray, anchor_list: List[int], tol: float):
        self.point_array = point_array
        self.tol = tol
        self.anchor_list = anchor_list
        self.piece_list: List[_Piece] = list()
        self.polyline_dict: Dict[int, np.ndarray] = dict()

    def _conflict(self, piece: _Piece) -> bool:
        for other in self.piece_list:
            if other.edge_idx == piece.edge_idx:
                continue
            if _pieces_conflict(piece, other, self.tol):
                return True
        for vertex in self.anchor_list:
            x = self.point_array[vertex]
            if min(np.linalg.norm(x - piece.start), np.linalg.norm(x - piece.end)) <= self.tol:
                continue
            if _point_segment_distance(x, piece.start, piece.end) <= self.tol:
                return True
        return False

    def try_add(self, edge_idx: int, polyline: np.ndarray) -> bool:
        piece_list = [_Piece(edge_idx, polyline[i], polyline[i + 1]) for i in range(len(polyline) - 1)]
        if any(self._conflict(piece) for piece in piece_list):
            return False
        self.piece_list.extend(piece_list)
        self.polyline_dict[edge_idx] = polyline
        return True


def _arc_polyline(start: np.ndarray, end: np.ndarray, length: float, side: float) -> Optional[np.ndarray]:
    """Circular arc of the given length over the chord start-end, bulging to one side, in the plane."""
    chord_vec = end - start
    chord = float(np.linalg.norm(chord_vec))
    if chord <= 0.0:
        return None
    ratio = length / chord
    # half-angle t solves t / sin t = l / c
    half = scipy.optimize.brentq(lambda t: t - ratio * math.sin(t), 1e-9, math.pi - 1e-12)
    radius = chord / (2 * math.sin(half))
    direction = chord_vec / chord
    normal = np.array([-direction[1], direction[0]]) * side
    center = (start + end) / 2 - normal * radius * math.cos(half)

    start_angle = math.atan2(*(start - center)[::-1])
    sweep = 2 * half * (-side)
    angle_array = start_angle + sweep * np.linspace(0.0, 1.0, ARC_PIECE_CNT + 1)
    polyline = center + radius * np.column_stack([np.cos(angle_array), np.sin(angle_array)])
    polyline[0], polyline[-1] = start, end
    return polyline


def _leaf_direction_list(dim: int) -> List[np.ndarray]:
    if dim == 1:
        return [np.array([1.0, 0.0]), np.array([-1.0, 0.0])]

    direction_list: List[np.ndarray] = list()
    for idx in range(LEAF_DIRECTION_CNT):
        angle = 2 * math.pi * idx / LEAF_DIRECTION_CNT
        direction = np.zeros(dim)
        direction[0], direction[1] = math.cos(angle), math.sin(angle)
        direction_list.append(direction)
    for axis in range(2, dim):
        for sign in (1.0, -1.0):
            direction = np.zeros(dim)
            direction[axis] = sign
            direction_list.append(direction)
    return direction_list


def explain_embedding(opt: Optimum) -> EmbeddingVerdict:
    topology = opt.topology
    length_array = np.asarray(opt.length_list, dtype=float)
    tol = 1e-7 * (1.0 + float(length_array.sum()))
    dim = opt.placement.point_array.shape[1]

    point_array = opt.placement.point_array.astype(float)
    if dim == 1:
        point_array = np.column_stack([point_array, np.zeros(len(point_array))])

    dist_array = np.array([np.linalg.norm(point_array[u] - point_array[v]) for u, v in topology.edge_list])
    taut_list = tuple(int(e) for e in np.flatnonzero(length_array - dist_array <= tol))
    slack_list = tuple(int(e) for e in np.flatnonzero(length_array - dist_array > tol))

    def _verdict(embeddability: Embeddability, reason: str, drawing: Optional[_Drawing] = None) -> EmbeddingVerdict:
        LOG.debug(f'{topology}: {embeddability.value}, {reason}')
        return EmbeddingVerdict(
            embeddability=embeddability,
            taut_edge_list=taut_list,
            slack_edge_list=slack_list,
            reason=reason,
            point_array=point_array if drawing is None else drawing.point_array,
            polyline_dict=dict() if drawing is None else drawing.polyline_dict,
        )

    if not opt.feasible:
        return _verdict(Embeddability.ImmersionOnly, 'no feasible placement')

    degree_list = topology.degree_list()
    dirichlet_mask = topology.dirichlet_mask()
    leaf_set = {idx for idx in range(topology.vertex_cnt) if (not dirichlet_mask[idx]) and degree_list[idx] == 1}
    anchor_list = [idx for idx in range(topology.vertex_cnt) if idx not in leaf_set]
    for pos, first in enumerate(anchor_list):
        for second in anchor_list[pos + 1:]:
            if np.linalg.norm(point_array[first] - point_array[second]) <= tol:
                return _verdict(Embeddability.ImmersionOnly, f'vertices {first} and {second} coincide')

    drawing = _Drawing(point_array.copy(), anchor_list, tol)
    leaf_edge_list: List[int] = list()
    arc_edge_list: List[int] = list()
    for e, (u, v) in enumerate(topology.edge_list):
        if (u in leaf_set) or (v in leaf_set):
            leaf_edge_list.append(e)
        elif e in slack_list:
            arc_edge_list.append(e)
        elif not drawing.try_add(e, np.array([point_array[u], point_array[v]])):
            return _verdict(Embeddability.ImmersionOnly, f'taut edge {e} meets another edge or vertex')

    for e in arc_edge_list:
        u, v = topology.edge_list[e]
        if dim == 1:
            return _verdict(Embeddability.ImmersionOnly, f'slack edge {e} has no room on the line')
        if dim >= 3:
            # curves in three or more dimensions avoid segments generically
            continue
        for side in (1.0, -1.0):
            polyline = _arc_polyline(point_array[u], point_array[v], float(length_array[e]), side)
            if (polyline is not None) and drawing.try_add(e, polyline):
                break
        else:
            return _verdict(Embeddability.ImmersionOnly, f'slack edge {e} cannot be drawn as an arc')

    for e in leaf_edge_list:
        u, v = topology.edge_list[e]
        leaf, base = (u, v) if u in leaf_set else (v, u)
        length = float(length_array[e])
        direction_list = _leaf_direction_list(dim)
        current = point_array[leaf] - point_array[base]
        if np.linalg.norm(current) > 0.0:
            direction_list.insert(0, current / np.linalg.norm(current))
        for direction in direction_list:
            end = point_array[base] + length * direction
            if drawing.try_add(e, np.array([point_array[base], end])):
                drawing.point_array[leaf] = end
                break
        else:
            return _verdict(Embeddability.ImmersionOnly, f'free leaf edge {e} meets the drawing in every direction')

    return _verdict(Embeddability.Embeddable, 'straight and arc realization without crossings', drawing)


def embedding_check(opt: Optimum) -> Embeddability:
    return explain_embedding(opt).embeddability


def rigid_edge_report(opt: Optimum) -> Tuple[int, ...]:
    """Edges stretched to the distance of their endpoints at the placement."""
    return explain_embedding(opt).taut_edge_list

from __future__ import annotations

import logging
from typing import Dict, List

import numpy as np

from ..optimizer import EmbeddingVerdict, Optimum, explain_embedding
from ..topology import TopologyRole


LOG = logging.getLogger(__name__)

CANVAS_SIZE = 600.0
MARGIN = 40.0
VERTEX_RADIUS = 5.0


class SvgBuilder:
    def __init__(self):
        self.svg = ''

    def header(self, width: float, height: float) -> None:
        self.svg += f"""<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg version="1.1" width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}" xmlns="http://www.w3.org/2000/svg">
"""

    def title(self, text: str) -> None:
        self.svg += f'<title>{text}</title>\n'

    def line(self, x1: float, y1: float, x2: float, y2: float, extra: str = '') -> None:
        self.svg += f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" {extra}/>\n'

    def path(self, point_list: List[np.ndarray], extra: str = '') -> None:
        command = ' '.join(
            ('M' if idx == 0 else 'L') + f' {x:.2f} {y:.2f}'
            for idx, (x, y) in enumerate(point_list)
        )
        self.svg += f'<path d="{command}" fill="none" stroke="black" {extra}/>\n'

    def circle(self, x: float, y: float, fill: str) -> None:
        self.svg += f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{VERTEX_RADIUS:.1f}" fill="{fill}" stroke="black"/>\n'

    def string_ttf(self, x: float, y: float, string: str, extra: str = '') -> None:
        self.svg += f'<text x="{x:.2f}" y="{y:.2f}" {extra}>{string}</text>\n'

    def get_svg(self) -> str:
        return f'{self.svg}</svg>\n'


def _planar(point_array: np.ndarray) -> np.ndarray:
    if point_array.shape[1] >= 2:
        return point_array[:, :2]
    return np.column_stack([point_array[:, 0], np.zeros(len(point_array))])


def _bent_polyline(start: np.ndarray, end: np.ndarray, bend: float) -> np.ndarray:
    """Quadratic curve standing in for a slack edge that has no planar arc."""
    chord = end - start
    normal = np.array([-chord[1], chord[0]])
    control = (start + end) / 2 + normal * bend
    t = np.linspace(0.0, 1.0, 17)[:, None]
    return (1 - t) ** 2 * start + 2 * (1 - t) * t * control + t * t * end


def draw_optimum(opt: Optimum, verdict: EmbeddingVerdict = None) -> str:
    """Pins filled, free vertices hollow, taut edges as lines, slack edges dashed, the free leaf labelled N."""
    verdict = verdict or explain_embedding(opt)
    topology = opt.topology
    point_array = _planar(np.asarray(verdict.point_array, dtype=float))
    polyline_dict: Dict[int, np.ndarray] = {e: _planar(p) for e, p in verdict.polyline_dict.items()}

    for e, (u, v) in enumerate(topology.edge_list):
        if e in polyline_dict:
            continue
        if e in verdict.slack_edge_list:
            polyline_dict[e] = _bent_polyline(point_array[u], point_array[v], 0.25)
        else:
            polyline_dict[e] = np.array([point_array[u], point_array[v]])

    all_point_array = np.vstack([point_array] + list(polyline_dict.values()))
    lo, hi = all_point_array.min(axis=0), all_point_array.max(axis=0)
    scale = (CANVAS_SIZE - 2 * MARGIN) / max(float(np.max(hi - lo)), 1e-12)

    def _to_canvas(p: np.ndarray) -> np.ndarray:
        # svg y axis points down
        return np.array([MARGIN + (p[0] - lo[0]) * scale, CANVAS_SIZE - MARGIN - (p[1] - lo[1]) * scale])

    svg = SvgBuilder()
    svg.header(CANVAS_SIZE, CANVAS_SIZE)
    svg.title(f'{topology.canonical_code} {opt.functional.value}={opt.value!r}')

    for e in range(topology.edge_cnt):
        canvas_list = [_to_canvas(p) for p in polyline_dict[e]]
        if e in verdict.slack_edge_list:
            svg.path(canvas_list, extra='stroke-dasharray="6,4"')
        elif len(canvas_list) == 2:
            svg.line(*canvas_list[0], *canvas_list[1])
        else:
            svg.path(canvas_list)

    for idx, vertex in enumerate(topology.vertex_list):
        x, y = _to_canvas(point_array[idx])
        svg.circle(x, y, 'black' if vertex.role == TopologyRole.Dirichlet else 'white')
        if vertex.role == TopologyRole.Neumann:
            svg.string_ttf(x + 8, y - 8, 'N', extra='font-size="14"')

    LOG.debug(f'drawing of {topology} with {topology.vertex_cnt} vertices')
    return svg.get_svg()


def write_svg(opt: Optimum, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as svg_file:
        svg_file.write(draw_optimum(opt))

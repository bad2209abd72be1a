from __future__ import annotations

import json
from typing import Any, Dict, List

from ..common.constants import DIRICHLET_ROLE_NAME, FREE_ROLE_NAME
from ..common.errors import ProblemFormatError
from .metric_graph import MetricGraph, GraphVertex, GraphEdge, VertexRole


def graph_to_dict(g: MetricGraph) -> Dict[str, Any]:
    vertex_list: List[Dict[str, Any]] = list()
    for v in g.vertex_list:
        if v.role.is_dirichlet:
            vertex_list.append({'id': v.id, 'role': DIRICHLET_ROLE_NAME, 'pin': v.role.pin})
        else:
            vertex_list.append({'id': v.id, 'role': FREE_ROLE_NAME})
    edge_list = [{'id': e.id, 'u': e.u, 'v': e.v, 'length': e.length} for e in g.edge_list]
    return {'vertices': vertex_list, 'edges': edge_list}


def _require(src: Dict[str, Any], key: str, value_type, field: str) -> Any:
    if not isinstance(src, dict) or key not in src:
        raise ProblemFormatError('missing value', field=field)
    value = src[key]
    # bool is an int subclass, reject it explicitly
    if isinstance(value, bool) or not isinstance(value, value_type):
        raise ProblemFormatError(f'unexpected type {type(value).__name__}', field=field)
    return value


def graph_from_dict(src: Dict[str, Any]) -> MetricGraph:
    vertex_src_list = _require(src, 'vertices', list, 'vertices')
    edge_src_list = _require(src, 'edges', list, 'edges')

    vertex_list: List[GraphVertex] = list()
    for idx, vertex_src in enumerate(vertex_src_list):
        field = f'vertices[{idx}]'
        vid = _require(vertex_src, 'id', int, field + '.id')
        role_name = _require(vertex_src, 'role', str, field + '.role')
        if role_name == DIRICHLET_ROLE_NAME:
            role = VertexRole.dirichlet(_require(vertex_src, 'pin', int, field + '.pin'))
        elif role_name == FREE_ROLE_NAME:
            role = VertexRole.free()
        else:
            raise ProblemFormatError(f'unknown role "{role_name}"', field=field + '.role')
        vertex_list.append(GraphVertex(id=vid, role=role))

    edge_list: List[GraphEdge] = list()
    for idx, edge_src in enumerate(edge_src_list):
        field = f'edges[{idx}]'
        edge_list.append(GraphEdge(
            id=_require(edge_src, 'id', int, field + '.id'),
            u=_require(edge_src, 'u', int, field + '.u'),
            v=_require(edge_src, 'v', int, field + '.v'),
            length=float(_require(edge_src, 'length', (int, float), field + '.length')),
        ))

    return MetricGraph(vertex_list=tuple(vertex_list), edge_list=tuple(edge_list))


def graph_to_json(g: MetricGraph) -> str:
    return json.dumps(graph_to_dict(g))


def graph_from_json(text: str) -> MetricGraph:
    try:
        src = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(exc.msg, line=exc.lineno)
    return graph_from_dict(src)

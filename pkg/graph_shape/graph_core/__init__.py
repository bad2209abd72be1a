from .metric_graph import (
    VertexKind, VertexRole, GraphVertex, GraphEdge, GraphDiagnostics, MetricGraph,
    validate, total_length, is_tree, graph_distance, scale_lengths, subdivide_edge,
    contract_short_edges, merge_degree_two,
)
from .graph_json import graph_to_dict, graph_from_dict, graph_to_json, graph_from_json

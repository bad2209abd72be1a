import json
import unittest

from ..common.errors import ProblemFormatError
from ..graph_core import graph_from_dict, graph_from_json, graph_to_dict, graph_to_json

from .testing_helpers import t_graph


class TestGraphJson(unittest.TestCase):
    def test_t_graph_dict(self):
        src = graph_to_dict(t_graph())
        self.assertEqual(src['vertices'][0], {'id': 0, 'role': 'dirichlet', 'pin': 0})
        self.assertEqual(src['vertices'][3], {'id': 3, 'role': 'free'})
        self.assertEqual(src['edges'][2], {'id': 2, 'u': 2, 'v': 3, 'length': 1.0})
        self.assertEqual(graph_from_json(graph_to_json(t_graph())), t_graph())

    def test_bad_json_line(self):
        with self.assertRaises(ProblemFormatError) as ctx:
            graph_from_json('{\n"vertices": [\n}')
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.code, 3)

    def test_bad_fields(self):
        src = graph_to_dict(t_graph())
        del src['edges'][1]['length']
        with self.assertRaises(ProblemFormatError) as ctx:
            graph_from_dict(src)
        self.assertEqual(ctx.exception.field, 'edges[1].length')

        src = graph_to_dict(t_graph())
        src['vertices'][2]['role'] = 'neumann'
        with self.assertRaises(ProblemFormatError) as ctx:
            graph_from_dict(src)
        self.assertEqual(ctx.exception.field, 'vertices[2].role')

        src = graph_to_dict(t_graph())
        src['vertices'][0]['id'] = True
        with self.assertRaises(ProblemFormatError) as ctx:
            graph_from_json(json.dumps(src))
        self.assertEqual(ctx.exception.field, 'vertices[0].id')

        with self.assertRaises(ProblemFormatError) as ctx:
            graph_from_dict({'vertices': []})
        self.assertEqual(ctx.exception.field, 'edges')

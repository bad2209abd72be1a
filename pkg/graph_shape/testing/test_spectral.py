import math
import unittest

import numpy as np

from ..common.errors import NoDirichletVertexError, SpectralResonanceError
from ..fem_oracle import fem_lambda1
from ..graph_core import MetricGraph, VertexRole
from ..spectral import SecularKernel, lambda1, secular_matrix

from .testing_helpers import segment_graph, star_graph, t_graph


class TestSpectral(unittest.TestCase):
    def test_segment(self):
        sol = lambda1(segment_graph())
        self.assertAlmostEqual(sol.lambda1, math.pi ** 2 / 4, delta=1e-9)
        self.assertFalse(sol.vertex_vanishing)
        self.assertAlmostEqual(sol.vertex_value_dict[1], math.sqrt(2.0), delta=1e-9)
        self.assertLessEqual(sol.bracket[0], sol.k1)
        self.assertLessEqual(sol.k1, sol.bracket[1])

    def test_two_dirichlet_ends(self):
        g = MetricGraph.from_lists([(0, VertexRole.dirichlet(0)), (1, VertexRole.dirichlet(1))], [(0, 0, 1, 2.0)])
        sol = lambda1(g)
        self.assertAlmostEqual(sol.lambda1, math.pi ** 2 / 4, delta=1e-12)
        self.assertTrue(sol.vertex_vanishing)

    def test_secular_matrix(self):
        matrix = secular_matrix(segment_graph(), 1.0)
        self.assertEqual(matrix.shape, (1, 1))
        self.assertAlmostEqual(matrix[0, 0], 1.0 / math.tan(1.0), places=14)

        matrix = secular_matrix(t_graph(), 1.0)
        self.assertEqual(matrix.shape, (2, 2))
        self.assertAlmostEqual(matrix[0, 1], -1.0 / math.sin(1.0), places=14)
        self.assertAlmostEqual(matrix[0, 1], matrix[1, 0], places=15)

        with self.assertRaises(SpectralResonanceError):
            secular_matrix(segment_graph(), math.pi)

    def test_vertex_vanishing_mode(self):
        kernel = SecularKernel.from_graph(star_graph((1.0, 1.0, 0.5)))
        self.assertTrue(kernel.has_vertex_vanishing_mode(math.pi, np.array([1.0, 1.0, 0.5])))
        kernel = SecularKernel.from_graph(star_graph((1.0, 0.7, 0.5)))
        self.assertFalse(kernel.has_vertex_vanishing_mode(math.pi, np.array([1.0, 0.7, 0.5])))

    def test_upper_bound(self):
        for g in (t_graph(), star_graph((1.0, 1.0, 0.5)), star_graph((0.3, 0.4, 2.0))):
            l_max = max(e.length for e in g.edge_list)
            self.assertLessEqual(lambda1(g).lambda1, math.pi ** 2 / l_max ** 2 * (1 + 1e-12))

    def test_fem_agreement(self):
        g = t_graph()
        value = lambda1(g).lambda1
        fem_value = fem_lambda1(g, 64)
        self.assertGreaterEqual(fem_value, value)
        self.assertLess(fem_value - value, 1e-3)

        coarse_error = fem_lambda1(g, 32) - value
        fine_error = fem_value - value
        self.assertGreaterEqual(coarse_error / fine_error, 3.5)
        self.assertLessEqual(coarse_error / fine_error, 4.5)

    def test_no_dirichlet(self):
        g = MetricGraph.from_lists([(0, VertexRole.free()), (1, VertexRole.free())], [(0, 0, 1, 1.0)])
        with self.assertRaises(NoDirichletVertexError):
            lambda1(g)

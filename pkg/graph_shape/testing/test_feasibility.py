import unittest

import numpy as np

from ..common.config import Config
from ..graph_core import MetricGraph, VertexRole
from ..optimizer import (
    SQRT3, TRIANGLE_PINS, collinear_gamma1, collinear_pins, edge_violation, feasibility, feasibility_tol,
    initial_points, path_violation_bound, triangle_gamma2,
)
from ..topology import topology_from_graph

from .testing_helpers import fast_config, segment_graph, t_graph


TWO_PINS = np.array([[0.0, 0.0], [1.0, 0.0]])


class TestFeasibility(unittest.TestCase):
    def setUp(self):
        self.t_topology, _ = topology_from_graph(t_graph())

    def test_initial_points(self):
        point_array = initial_points(self.t_topology, TWO_PINS)
        np.testing.assert_array_equal(point_array[0], [0.0, 0.0])
        np.testing.assert_array_equal(point_array[1], [1.0, 0.0])
        np.testing.assert_array_equal(point_array[2], [0.5, 0.0])
        np.testing.assert_array_equal(point_array[3], [0.5, 0.0])

    def test_taut_t_graph(self):
        placement = feasibility(self.t_topology, (0.5, 0.5, 1.0), TWO_PINS, fast_config())
        self.assertTrue(placement.feasible)
        self.assertLessEqual(placement.max_violation, feasibility_tol(np.array([0.5, 0.5, 1.0]), Config()))
        np.testing.assert_allclose(placement.point_array[2], [0.5, 0.0], atol=1e-4)

    def test_short_paths(self):
        length_array = np.array([0.4, 0.4, 1.2])
        self.assertAlmostEqual(path_violation_bound(self.t_topology, length_array, TWO_PINS), 0.1, places=12)

        placement = feasibility(self.t_topology, length_array, TWO_PINS, fast_config())
        self.assertFalse(placement.feasible)
        self.assertAlmostEqual(placement.max_violation, 0.1, places=12)

    def test_edge_violation(self):
        point_array = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.0], [0.5, 0.5]])
        np.testing.assert_allclose(
            edge_violation(self.t_topology, np.array([0.5, 0.5, 1.0]), point_array),
            [0.0, 0.0, -0.5],
        )

    def test_pinned_edge(self):
        topology, _ = topology_from_graph(MetricGraph.from_lists(
            [(0, VertexRole.dirichlet(0)), (1, VertexRole.dirichlet(1))], [(0, 0, 1, 1.0)],
        ))
        self.assertEqual(topology.free_index_list(), ())

        placement = feasibility(topology, (1.0,), TWO_PINS, fast_config())
        self.assertTrue(placement.feasible)
        self.assertAlmostEqual(placement.max_violation, 0.0, places=15)

        placement = feasibility(topology, (0.9,), TWO_PINS, fast_config())
        self.assertFalse(placement.feasible)
        self.assertAlmostEqual(placement.max_violation, 0.1, places=12)

    def test_free_leaf(self):
        topology, length_list = topology_from_graph(segment_graph(2.0))
        placement = feasibility(topology, length_list, np.array([[3.0, -1.0, 2.0]]), fast_config())
        self.assertTrue(placement.feasible)
        self.assertLessEqual(placement.max_violation, 0.0)

    def test_collinear_star(self):
        n = 12
        topology, length_list = topology_from_graph(collinear_gamma1(n))
        placement = feasibility(topology, length_list, np.array(collinear_pins(n)), Config())
        self.assertTrue(placement.feasible)
        center = topology.free_index_list()[0]
        np.testing.assert_allclose(placement.point_array[center], [0.0, 0.0], atol=1e-2)
        self.assertLess(abs(placement.point_array[center][0]), 1e-5)

    def test_triangle_star(self):
        total_length = 2.2
        topology, length_list = topology_from_graph(triangle_gamma2(total_length))
        placement = feasibility(topology, length_list, np.array(TRIANGLE_PINS), fast_config())
        self.assertTrue(placement.feasible)

        placement = feasibility(
            topology, [x * SQRT3 / total_length for x in length_list], np.array(TRIANGLE_PINS), fast_config(),
        )
        self.assertFalse(placement.feasible)

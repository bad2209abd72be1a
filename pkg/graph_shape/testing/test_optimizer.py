import dataclasses
import math
import unittest

import numpy as np

from ..common.config import Config
from ..common.errors import InfeasibleSpecError, ProblemFormatError, TopologyError
from ..dirichlet_energy import solve_energy
from ..fem_oracle import fem_energy
from ..optimizer import (
    SQRT3, Embeddability, Functional, TRIANGLE_PINS, collinear_pins, compare_collinear_candidates, optimize,
    optimize_lengths, scan_triangle_family, select_optimum, two_pin_t_graph,
)
from ..topology import TopologyRole, topology_from_graph

from .testing_helpers import fast_config, optimum_from_graph, problem, segment_graph, star_graph, t_graph


TWO_PINS = [(-0.5, 0.0), (0.5, 0.0)]


class TestOptimizeLengths(unittest.TestCase):
    def test_single_edge(self):
        topology, _ = topology_from_graph(segment_graph())
        opt = optimize_lengths(topology, problem([(0.0, 0.0)], 1.0), fast_config())
        self.assertTrue(opt.feasible)
        self.assertEqual(opt.length_list, (1.0,))
        self.assertAlmostEqual(opt.value, -1 / 6, places=14)

    def test_t_graph(self):
        topology, _ = topology_from_graph(t_graph())
        opt = optimize_lengths(topology, problem(TWO_PINS, 2.0), fast_config())
        self.assertTrue(opt.feasible)
        self.assertAlmostEqual(opt.value, -11 / 24, delta=1e-9)
        np.testing.assert_allclose(opt.length_list, (0.5, 0.5, 1.0), atol=1e-6)
        self.assertAlmostEqual(opt.total_length, 2.0, places=9)
        np.testing.assert_allclose(opt.placement.point(2), (0.0, 0.0), atol=1e-6)

    def test_unreachable_pins(self):
        topology, _ = topology_from_graph(t_graph())
        opt = optimize_lengths(topology, problem([(0.0, 0.0), (3.0, 0.0)], 2.0), fast_config())
        self.assertFalse(opt.feasible)
        self.assertEqual(opt.value, math.inf)

    def test_pin_count_mismatch(self):
        topology, _ = topology_from_graph(segment_graph())
        opt = optimize_lengths(topology, problem(TWO_PINS, 2.0), fast_config())
        self.assertFalse(opt.feasible)


class TestSelectOptimum(unittest.TestCase):
    def test_tie_break(self):
        star = optimum_from_graph(star_graph((0.5, 0.5)), TWO_PINS)
        t_shape = optimum_from_graph(t_graph(), TWO_PINS)
        self.assertEqual(star.edge_cnt, 1)

        same_star = dataclasses.replace(star, value=-1.0)
        same_t = dataclasses.replace(t_shape, value=-1.0 - 1e-12)
        self.assertIs(select_optimum([same_t, same_star], 1e-9), same_star)
        self.assertIs(select_optimum([same_t, same_star], 0.0), same_t)

        lower_t = dataclasses.replace(t_shape, value=-1.1)
        self.assertIs(select_optimum([same_star, lower_t], 1e-9), lower_t)


class TestOptimize(unittest.TestCase):
    def test_one_pin(self):
        opt = optimize(problem([(0.0, 0.0)], 1.0), fast_config())
        self.assertAlmostEqual(opt.value, -1 / 6, places=14)
        self.assertEqual(opt.embeddable, Embeddability.Embeddable)
        self.assertTrue(opt.audit.passed)

    def test_two_pins(self):
        opt = optimize(problem(TWO_PINS, 2.0), fast_config())
        self.assertAlmostEqual(opt.value, -11 / 24, delta=1e-9)
        np.testing.assert_allclose(sorted(opt.length_list), (0.5, 0.5, 1.0), atol=1e-6)
        junction = opt.topology.degree_list().index(3)
        np.testing.assert_allclose(opt.placement.point(junction), (0.0, 0.0), atol=1e-6)
        self.assertAlmostEqual(fem_energy(opt.graph(), 256), opt.value, delta=1e-5)
        self.assertEqual(opt.embeddable, Embeddability.Embeddable)
        self.assertEqual(opt.topology.canonical_code, topology_from_graph(t_graph())[0].canonical_code)
        self.assertEqual(opt.audit.neumann_vertex_id, 3)
        self.assertTrue(opt.audit.passed)

    def test_two_pins_lambda1(self):
        spec = problem(TWO_PINS, 2.0, Functional.Lambda1)
        opt = optimize(spec, fast_config())
        self.assertEqual(opt.functional, Functional.Lambda1)
        self.assertEqual(opt.topology.canonical_code, topology_from_graph(t_graph())[0].canonical_code)
        self.assertLess(opt.value, math.pi ** 2 / 4)

    def test_longer_is_lower_one_pin(self):
        prev_value = math.inf
        for total in (0.5, 1.0, 1.5, 2.0, 3.0):
            opt = optimize(problem([(0.0, 0.0)], total), fast_config())
            self.assertAlmostEqual(opt.value, -total ** 3 / 6, places=12)
            self.assertLess(opt.value, prev_value)
            prev_value = opt.value

    def test_longer_is_lower_two_pins(self):
        prev_value = math.inf
        for total in (1.5, 2.0, 2.5, 3.0):
            opt = optimize(problem(TWO_PINS, total), fast_config())
            t_shape, _ = two_pin_t_graph(*TWO_PINS, total)
            self.assertLessEqual(opt.value, solve_energy(t_shape).energy + 1e-9)
            self.assertLessEqual(opt.value, prev_value)
            prev_value = opt.value

    def test_deterministic(self):
        first = optimize(problem(TWO_PINS, 2.0), fast_config())
        second = optimize(problem(TWO_PINS, 2.0), fast_config())
        self.assertEqual(first.topology.canonical_code, second.topology.canonical_code)
        self.assertEqual(first.value, second.value)
        self.assertEqual(first.length_list, second.length_list)

    def test_infeasible_spec(self):
        with self.assertRaises(InfeasibleSpecError):
            optimize(problem(TWO_PINS, 0.5), fast_config())
        with self.assertRaises(InfeasibleSpecError):
            optimize(problem(TRIANGLE_PINS, 1.5), fast_config())

    def test_bad_spec(self):
        with self.assertRaises(ProblemFormatError):
            optimize(problem([(0.0, 0.0), (0.0, 0.0)], 2.0), fast_config())

    def test_topology_filter(self):
        code = topology_from_graph(t_graph())[0].canonical_code
        opt = optimize(problem(TWO_PINS, 2.0), fast_config(), topology_filter=[code])
        self.assertEqual(opt.topology.canonical_code, code)
        with self.assertRaises(TopologyError):
            optimize(problem(TWO_PINS, 2.0), fast_config(), topology_filter=['N()'])


class TestTriangleShapes(unittest.TestCase):
    def test_short_star(self):
        opt = optimize(problem(TRIANGLE_PINS, 1.8), fast_config())
        self.assertFalse(opt.topology.has_neumann)
        self.assertEqual(opt.edge_cnt, 3)
        reference = scan_triangle_family('gamma1', 1.8)
        self.assertAlmostEqual(opt.value, reference.energy, delta=1e-6)

        # two equal legs, the third one closes the pin distance
        short, same, long = sorted(opt.length_list)
        self.assertAlmostEqual(short, same, delta=1e-4)
        self.assertAlmostEqual(long, SQRT3 / 2 - math.sqrt(short * short - 0.25), delta=1e-4)

    def test_long_shape_has_leaf(self):
        opt = optimize(problem(TRIANGLE_PINS, 2.2), fast_config())
        self.assertTrue(opt.topology.has_neumann)
        reference = scan_triangle_family('gamma3', 2.2)
        self.assertLessEqual(opt.value, reference.energy + 1e-6)

        # the three pin edges are not all equal
        pin_edge_list = [
            length for (u, v), length in zip(opt.topology.edge_list, opt.length_list)
            if TopologyRole.Dirichlet in (opt.topology.vertex_list[u].role, opt.topology.vertex_list[v].role)
        ]
        self.assertEqual(len(pin_edge_list), 3)
        self.assertGreaterEqual(max(pin_edge_list) - min(pin_edge_list), 1e-3)


class TestCollinearShape(unittest.TestCase):
    def test_not_embeddable(self):
        n = 12
        opt = optimize(problem(collinear_pins(n), n + 2.0), fast_config())
        star_energy, _ = compare_collinear_candidates(n)
        self.assertLessEqual(opt.value, star_energy + 1e-6)
        self.assertEqual(opt.embeddable, Embeddability.ImmersionOnly)

    def test_no_degenerate_edge(self):
        n = 12
        total = n + 2.0
        opt = optimize(problem(collinear_pins(n), total), Config(env={}))
        self.assertGreaterEqual(min(opt.length_list), 1e-6 * total)
        star_energy, _ = compare_collinear_candidates(n)
        self.assertLessEqual(opt.value, star_energy + 1e-6)

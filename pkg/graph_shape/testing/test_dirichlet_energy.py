import math
import unittest

import numpy as np

from ..common.errors import EdgeRangeError, NoDirichletVertexError
from ..dirichlet_energy import (
    KirchhoffKernel, assemble_kirchhoff_system, att_energy, att_hypothesis, audit_optimality, dirichlet_set_energy,
    distribution_function, edge_slope_from_formula, energy_gradient, evaluate, poincare_ratio, solve_energy,
)
from ..graph_core import MetricGraph, VertexRole, subdivide_edge

from .testing_helpers import segment_graph, star_graph, t_graph


class TestDirichletEnergy(unittest.TestCase):
    def test_segment(self):
        sol = solve_energy(segment_graph())
        self.assertAlmostEqual(sol.energy, -1.0 / 6, places=14)
        self.assertAlmostEqual(sol.vertex_value_dict[1], 0.5, places=14)
        self.assertAlmostEqual(sol.max_value, 0.5, places=14)
        self.assertAlmostEqual(sol.integral, 1.0 / 3, places=14)

        value, derivative = evaluate(sol, (0, 1), 0.5)
        self.assertAlmostEqual(value, 0.375, places=14)
        self.assertAlmostEqual(derivative, 0.5, places=14)
        value, derivative = evaluate(sol, (1, 0), 0.0)
        self.assertAlmostEqual(value, 0.5, places=14)
        self.assertAlmostEqual(derivative, 0.0, places=14)
        with self.assertRaises(EdgeRangeError):
            evaluate(sol, (0, 1), 1.5)

    def test_t_graph(self):
        system = assemble_kirchhoff_system(t_graph())
        self.assertEqual(system.dimension, 2)
        self.assertEqual(list(system.free_vertex_id_list), [2, 3])

        sol = solve_energy(t_graph())
        self.assertAlmostEqual(sol.energy, -11.0 / 24, places=14)
        self.assertAlmostEqual(sol.vertex_value_dict[2], 3.0 / 8, places=14)
        self.assertAlmostEqual(sol.vertex_value_dict[3], 7.0 / 8, places=14)
        self.assertLessEqual(sol.max_residual, 1e-14)
        self.assertAlmostEqual(sol.energy, -sol.integral / 2, places=14)

    def test_subdivision_keeps_solution(self):
        sol = solve_energy(t_graph())
        finer = solve_energy(subdivide_edge(t_graph(), 2, 0.4))
        self.assertAlmostEqual(finer.energy, sol.energy, places=13)
        value, _ = evaluate(sol, (2, 3), 0.4)
        self.assertAlmostEqual(finer.vertex_value_dict[4], value, places=13)

    def test_short_edge_energy(self):
        long = t_graph(distance=2.0, total=8.0 + 1e-7)
        short = subdivide_edge(long, 2, 1e-7)
        sol = solve_energy(short)
        self.assertEqual(sol.energy, -sol.integral / 2)
        self.assertAlmostEqual(sol.energy / solve_energy(long).energy, 1.0, places=13)

        kernel = KirchhoffKernel.from_graph(short)
        length_array = np.array([e.length for e in short.edge_list])
        self.assertAlmostEqual(kernel.energy(length_array) / sol.energy, 1.0, places=14)

    def test_no_dirichlet(self):
        g = MetricGraph.from_lists([(0, VertexRole.free()), (1, VertexRole.free())], [(0, 0, 1, 1.0)])
        with self.assertRaises(NoDirichletVertexError):
            solve_energy(g)

    def test_star_slope_formula(self):
        length_list = (1.0, 2.0, 3.0)
        sol = solve_energy(star_graph(length_list))
        for idx in range(3):
            l1, l2, l3 = length_list[idx], length_list[(idx + 1) % 3], length_list[(idx + 2) % 3]
            self.assertAlmostEqual(sol.edge_slope_dict[(idx, 3)], edge_slope_from_formula(l1, l2, l3), places=13)

    def test_energy_gradient(self):
        g = star_graph((0.7, 1.1, 1.6))
        gradient = energy_gradient(g)
        step = 1e-6
        for e in g.edge_list:
            plus = MetricGraph(g.vertex_list, tuple(
                x if x.id != e.id else type(x)(x.id, x.u, x.v, x.length + step) for x in g.edge_list))
            minus = MetricGraph(g.vertex_list, tuple(
                x if x.id != e.id else type(x)(x.id, x.u, x.v, x.length - step) for x in g.edge_list))
            numeric = (solve_energy(plus).energy - solve_energy(minus).energy) / (2 * step)
            self.assertAlmostEqual(gradient[e.id], numeric, delta=1e-6)

    def test_distribution_function(self):
        sol = solve_energy(segment_graph())
        self.assertAlmostEqual(distribution_function(sol, 0.375), 0.5, places=12)
        self.assertAlmostEqual(distribution_function(sol, 0.5), 1.0, places=12)
        self.assertAlmostEqual(distribution_function(sol, 2.0), 1.0, places=12)
        self.assertAlmostEqual(distribution_function(sol, -1.0), 0.0, places=12)

        sol = solve_energy(t_graph())
        self.assertAlmostEqual(distribution_function(sol, 1.0), 2.0, places=12)

    def test_att(self):
        self.assertAlmostEqual(att_energy(1.0), -1.0 / 6, places=15)
        self.assertFalse(att_hypothesis(0.0, 0.5))
        for a in np.linspace(0.05, 2.0, 40):
            for big_a in np.linspace(0.0, 3.0, 61):
                if att_hypothesis(a, big_a):
                    self.assertLessEqual(att_energy(big_a), att_energy(a) + 1e-15)
                    gap = (big_a - a) * ((big_a + a) / 2 - 1)
                    self.assertAlmostEqual(att_energy(big_a) - att_energy(a), gap, places=13)

    def test_audit(self):
        g = t_graph()
        report = audit_optimality(g, solve_energy(g))
        self.assertTrue(report.passed)
        self.assertEqual(report.neumann_vertex_id, 3)
        self.assertTrue(report.dirichlet_leaf_flag)
        self.assertLessEqual(report.derivative_sup, 2.0)

        # two free leaves: not a candidate optimum
        g = MetricGraph.from_lists(
            [(0, VertexRole.dirichlet(0)), (1, VertexRole.free()), (2, VertexRole.free()), (3, VertexRole.free())],
            [(0, 0, 1, 1.0), (1, 1, 2, 0.5), (2, 1, 3, 0.5)],
        )
        report = audit_optimality(g, solve_energy(g))
        self.assertFalse(report.neumann_leaf_ok)
        self.assertFalse(report.passed)
        self.assertTrue(report.solution_checks_passed)

    def test_dirichlet_set_energy(self):
        released = dirichlet_set_energy(t_graph(), 1)
        self.assertLess(released, -11.0 / 24)
        self.assertIsNone(dirichlet_set_energy(segment_graph(), 0))

    def test_poincare(self):
        for g in (segment_graph(), t_graph(), star_graph((0.3, 0.9, 2.0))):
            ratio = poincare_ratio(solve_energy(g))
            self.assertGreater(ratio, 0.0)
            self.assertLessEqual(ratio, 1.0)
        self.assertFalse(math.isnan(poincare_ratio(solve_energy(segment_graph()))))

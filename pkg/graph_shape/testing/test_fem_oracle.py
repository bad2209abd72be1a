import math
import unittest

from ..common.errors import FemMeshError
from ..dirichlet_energy import solve_energy
from ..fem_oracle import assemble_mass, assemble_stiffness, build_mesh, fem_energy, fem_lambda1, rearrangement_check

from .testing_helpers import segment_graph, t_graph


class TestFemOracle(unittest.TestCase):
    def test_mesh(self):
        mesh = build_mesh(t_graph(), 4)
        # 4 vertices plus 3 interior nodes on each of 3 edges
        self.assertEqual(mesh.node_cnt, 13)
        self.assertEqual(len(mesh.dirichlet_node_array), 2)
        self.assertAlmostEqual(assemble_mass(mesh).sum(), 2.0, places=13)
        self.assertAlmostEqual(abs(assemble_stiffness(mesh).sum()), 0.0, places=10)
        with self.assertRaises(FemMeshError):
            build_mesh(t_graph(), 1)

    def test_segment_energy(self):
        self.assertAlmostEqual(fem_energy(segment_graph(), 2), -0.15625, places=14)

    def test_t_graph_energy(self):
        exact = solve_energy(t_graph()).energy
        self.assertLess(abs(fem_energy(t_graph(), 256) - exact), 1e-5)

        coarse_error = fem_energy(t_graph(), 16) - exact
        fine_error = fem_energy(t_graph(), 32) - exact
        self.assertAlmostEqual(coarse_error / fine_error, 4.0, delta=1e-6)

    def test_segment_lambda1(self):
        value = fem_lambda1(segment_graph(), 64)
        self.assertGreaterEqual(value, math.pi ** 2 / 4)
        self.assertLess(value - math.pi ** 2 / 4, 1e-3)

    def test_rearrangement(self):
        result = rearrangement_check(segment_graph())
        self.assertTrue(result.ok)
        self.assertAlmostEqual(result.segment_energy, result.graph_energy, delta=1e-6)

        result = rearrangement_check(t_graph())
        self.assertTrue(result.ok)
        self.assertLess(result.segment_energy, result.graph_energy)

import unittest

from ..common.errors import TopologyError
from ..graph_core import MetricGraph, VertexRole
from ..topology import (
    TopologyCatalog, TopologyRole, TopologyVertex, brute_force_topologies, canonical_code, check_topology,
    enumerate_topologies, make_topology, topology_from_graph,
)

from .testing_helpers import t_graph


def _t_topology(vertex_order):
    vertex_list = [
        TopologyVertex(role=TopologyRole.Dirichlet, pin=0),
        TopologyVertex(role=TopologyRole.Dirichlet, pin=1),
        TopologyVertex(role=TopologyRole.Kirchhoff),
        TopologyVertex(role=TopologyRole.Neumann),
    ]
    edge_list = [(0, 2), (1, 2), (2, 3)]
    position = {old: new for new, old in enumerate(vertex_order)}
    return make_topology(
        2,
        [vertex_list[old] for old in vertex_order],
        [(position[u], position[v]) for u, v in edge_list],
    )


class TestTopologyEnumeration(unittest.TestCase):
    def test_small_counts(self):
        self.assertEqual(len(enumerate_topologies(1)), 1)
        self.assertEqual(len(enumerate_topologies(2)), 4)

        single = enumerate_topologies(1)[0]
        self.assertTrue(single.has_neumann)
        self.assertEqual(single.edge_cnt, 1)

    def test_no_dirichlet(self):
        with self.assertRaises(TopologyError):
            enumerate_topologies(0)
        with self.assertRaises(TopologyError):
            TopologyCatalog().get_topology_list(-1)

    def test_brute_force_agreement(self):
        for k in range(1, 5):
            with self.subTest(k=k):
                fast = [t.canonical_code for t in enumerate_topologies(k)]
                slow = [t.canonical_code for t in brute_force_topologies(k)]
                self.assertEqual(fast, slow)
                self.assertEqual(len(set(fast)), len(fast))

    def test_invariants(self):
        for k in range(1, 5):
            for topology in enumerate_topologies(k):
                with self.subTest(topology=topology.canonical_code):
                    self.assertEqual(check_topology(topology), [])
                    self.assertLessEqual(topology.vertex_cnt, 2 * k)
                    neumann_cnt = sum(v.role == TopologyRole.Neumann for v in topology.vertex_list)
                    if neumann_cnt:
                        self.assertLessEqual(topology.edge_cnt, 2 * k - 1)
                    else:
                        self.assertLessEqual(topology.edge_cnt, max(2 * k - 3, 1))


class TestTopology(unittest.TestCase):
    def test_code_is_relabel_invariant(self):
        base = _t_topology([0, 1, 2, 3])
        for order in ([3, 2, 1, 0], [2, 0, 3, 1], [1, 3, 0, 2]):
            with self.subTest(order=order):
                other = _t_topology(order)
                self.assertEqual(other.canonical_code, base.canonical_code)
                self.assertEqual(other.vertex_list, base.vertex_list)
                self.assertEqual(other.edge_list, base.edge_list)
                self.assertEqual(canonical_code(other), base.canonical_code)

    def test_pin_labels_matter(self):
        path = make_topology(
            2,
            [TopologyVertex(role=TopologyRole.Dirichlet, pin=0), TopologyVertex(role=TopologyRole.Dirichlet, pin=1),
             TopologyVertex(role=TopologyRole.Neumann)],
            [(0, 1), (1, 2)],
        )
        swapped = make_topology(
            2,
            [TopologyVertex(role=TopologyRole.Dirichlet, pin=1), TopologyVertex(role=TopologyRole.Dirichlet, pin=0),
             TopologyVertex(role=TopologyRole.Neumann)],
            [(0, 1), (1, 2)],
        )
        self.assertNotEqual(path.canonical_code, swapped.canonical_code)

    def test_check_topology(self):
        bad = make_topology(
            1,
            [TopologyVertex(role=TopologyRole.Dirichlet, pin=0), TopologyVertex(role=TopologyRole.Kirchhoff)],
            [(0, 1)],
        )
        problem_list = check_topology(bad)
        self.assertEqual(len(problem_list), 1)
        self.assertIn('Kirchhoff', problem_list[0])

    def test_from_graph(self):
        topology, length_list = topology_from_graph(t_graph())
        self.assertEqual(topology.canonical_code, _t_topology([0, 1, 2, 3]).canonical_code)
        self.assertEqual(topology.edge_list, ((0, 2), (1, 2), (2, 3)))
        self.assertEqual(length_list, (0.5, 0.5, 1.0))

        g = topology.to_metric_graph(length_list)
        self.assertEqual(topology_from_graph(g), (topology, length_list))

    def test_from_graph_merges_degree_two(self):
        g = MetricGraph.from_lists(
            [(0, VertexRole.dirichlet(0)), (1, VertexRole.free()), (2, VertexRole.free())],
            [(0, 0, 1, 0.25), (1, 1, 2, 0.75)],
        )
        topology, length_list = topology_from_graph(g)
        self.assertEqual(topology.edge_cnt, 1)
        self.assertEqual(length_list, (1.0,))

    def test_pin_paths(self):
        topology = _t_topology([0, 1, 2, 3])
        self.assertEqual(topology.pin_path_list(), ((0, 1, (0, 1)),))

    def test_catalog(self):
        catalog = TopologyCatalog()
        self.assertIs(catalog, TopologyCatalog())
        topology_list = catalog.get_topology_list(2)
        self.assertEqual(len(topology_list), 4)

        code = topology_list[-1].canonical_code
        self.assertEqual(catalog.find_topology(2, code), topology_list[-1])
        self.assertIsNone(catalog.find_topology(2, 'D1()'))

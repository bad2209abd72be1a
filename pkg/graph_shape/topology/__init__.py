from .topology import (
    TopologyRole, TopologyVertex, Topology, canonical_code, make_topology, check_topology, topology_from_graph,
)
from .topology_enum import enumerate_topologies, brute_force_topologies, TopologyCatalog

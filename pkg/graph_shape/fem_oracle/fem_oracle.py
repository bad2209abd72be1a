from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
import scipy.sparse.linalg

from ..common.config import Config
from ..common.errors import FemConvergenceError, NoDirichletVertexError
from ..graph_core import MetricGraph
from .fem_mesh import Mesh, build_mesh, assemble_stiffness, assemble_mass, assemble_load


LOG = logging.getLogger(__name__)


def _free_block(mesh: Mesh, matrix):
    free = mesh.free_node_array
    return matrix[free][:, free].tocsc()


def fem_energy(g: MetricGraph, n: int) -> float:
    mesh = build_mesh(g, n)
    if not len(mesh.dirichlet_node_array):
        raise NoDirichletVertexError()

    stiffness = _free_block(mesh, assemble_stiffness(mesh))
    load = assemble_load(mesh)[mesh.free_node_array]
    solution = scipy.sparse.linalg.spsolve(stiffness, load)
    return float(0.5 * solution @ (stiffness @ solution) - load @ solution)


def fem_lambda1(g: MetricGraph, n: int, config: Optional[Config] = None) -> float:
    """Smallest eigenvalue of K u = lambda M u by inverse iteration with a sparse LU of K."""
    config = config or Config()
    mesh = build_mesh(g, n)
    if not len(mesh.dirichlet_node_array):
        raise NoDirichletVertexError()

    stiffness = _free_block(mesh, assemble_stiffness(mesh))
    mass = _free_block(mesh, assemble_mass(mesh))
    lu = scipy.sparse.linalg.splu(stiffness)

    # the ground state is positive, so the constant vector is never orthogonal to it
    vector = np.ones(stiffness.shape[0])
    vector /= math.sqrt(vector @ (mass @ vector))
    value = float(vector @ (stiffness @ vector))

    rel_change = math.inf
    for iter_cnt in range(1, config.fem_max_iter_cnt + 1):
        vector = lu.solve(mass @ vector)
        vector /= math.sqrt(vector @ (mass @ vector))
        next_value = float(vector @ (stiffness @ vector))
        rel_change = abs(next_value - value) / abs(next_value)
        value = next_value
        if rel_change <= config.fem_eigen_tol:
            LOG.debug(f'inverse iteration converged after {iter_cnt} steps, lambda_h={value!r}')
            return value

    raise FemConvergenceError(config.fem_max_iter_cnt, rel_change)

from .kirchhoff_system import LinearSystem, KirchhoffKernel, assemble_kirchhoff_system
from .energy_solution import (
    EnergySolution, solve_energy, energy_gradient, evaluate, distribution_function, distribution_values,
    edge_slope_from_formula, att_energy, att_max_value, att_hypothesis, dirichlet_set_energy, poincare_ratio,
)
from .energy_audit import AuditReport, audit_optimality

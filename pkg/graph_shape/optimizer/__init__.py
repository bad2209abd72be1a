from .problem_spec import Functional, ProblemSpec, validate_problem, problem_from_dict, parse_problem, load_problem
from .optimum import Embeddability, Placement, Optimum
from .feasibility import feasibility, feasibility_tol, initial_points, edge_violation, path_violation_bound
from .length_optimizer import FunctionalModel, LengthOptimizer, optimize_lengths
from .embedding_check import EmbeddingVerdict, explain_embedding, embedding_check, rigid_edge_report
from .shape_optimizer import optimize, select_optimum
from .reference_shapes import (
    SQRT3, TRIANGLE_PINS, TRIANGLE_STAR_MAX_LENGTH, FamilyMember,
    collinear_pins, collinear_gamma1, collinear_gamma2, collinear_chain, compare_collinear_candidates,
    two_pin_t_graph, triangle_gamma1, triangle_gamma1_parameter, triangle_gamma2, triangle_gamma3,
    triangle_gamma3_lengths, scan_triangle_family, best_triangle_family, crossover_length,
)

from .fem_mesh import Mesh, build_mesh, assemble_stiffness, assemble_mass, assemble_load
from .fem_oracle import fem_energy, fem_lambda1
from .rearrangement import RearrangementResult, rearrangement_check

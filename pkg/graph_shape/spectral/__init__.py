from .secular_solver import SpectralSolution, SecularKernel, secular_matrix, lambda1

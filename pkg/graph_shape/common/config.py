from __future__ import annotations

import logging
import os
from typing import Any, Dict, Mapping, Optional, Union

LOG = logging.getLogger(__name__)


class Config:
    def __init__(self, env: Optional[Mapping[str, str]] = None):
        self._env = os.environ if env is None else env

        # graph model and exact solvers
        self._min_edge_length = self._env_num('GRAPH_MIN_EDGE_LENGTH', 1e-9, 0.0, 1e-3)
        self._energy_residual_tol = self._env_num('ENERGY_RESIDUAL_TOL', 1e-12, 1e-16, 1e-6)
        self._spectral_scan_div_cnt = self._env_num('SPECTRAL_SCAN_DIVISIONS', 64, 8, 4096)
        self._spectral_bisect_tol = self._env_num('SPECTRAL_BISECT_TOL', 1e-12, 1e-15, 1e-6)

        # finite element oracle
        self._fem_max_iter_cnt = self._env_num('FEM_MAX_ITERATIONS', 10_000, 10, 1_000_000)
        self._fem_eigen_tol = self._env_num('FEM_EIGEN_TOL', 1e-12, 1e-15, 1e-4)
        self._rearrangement_grid_size = self._env_num('REARRANGEMENT_GRID_SIZE', 10_000, 100, 1_000_000)

        # placement feasibility
        self._feasibility_iter_cnt = self._env_num('FEASIBILITY_ITERATIONS', 10_000, 10, 10_000_000)
        self._feasibility_penalty_iter_cnt = self._env_num('FEASIBILITY_PENALTY_ITERATIONS', 60, 10, 100_000)
        self._feasibility_tol_factor = self._env_num('FEASIBILITY_TOL_FACTOR', 1e-7, 1e-12, 1e-3)

        # shape optimizer
        self._optimizer_seed_cnt = self._env_num('OPTIMIZER_SEED_COUNT', 16, 1, 1024)
        self._optimizer_worker_cnt = self._env_num('OPTIMIZER_WORKER_COUNT', 4, 1, 256)
        self._optimizer_penalty_weight = self._env_num('OPTIMIZER_PENALTY_WEIGHT', 1000.0, 1.0, 1e9)
        self._optimizer_contraction_ratio = self._env_num('OPTIMIZER_CONTRACTION_RATIO', 1e-6, 0.0, 1e-2)
        self._optimizer_tie_tol = self._env_num('OPTIMIZER_TIE_TOL', 1e-9, 0.0, 1e-3)
        self._nelder_mead_max_fev = self._env_num('NELDER_MEAD_MAX_FEV', 300, 10, 1_000_000)
        self._polish_candidate_cnt = self._env_num('POLISH_CANDIDATE_COUNT', 3, 1, 64)
        self._polish_max_iter_cnt = self._env_num('POLISH_MAX_ITERATIONS', 500, 10, 100_000)

        # report
        self._report_include_timing = self._env_bool('REPORT_INCLUDE_TIMING', False)

    def _env_bool(self, name: str, default_value: bool) -> bool:
        true_value_list = ('YES', 'ON', 'TRUE')
        false_value_list = ('NO', 'OFF', 'FALSE')

        value = self._env.get(name, true_value_list[0] if default_value else false_value_list[0]).upper().strip()
        if (value not in true_value_list) and (value not in false_value_list):
            LOG.error(f'{name} cannot be: {true_value_list} or {false_value_list}')
            return default_value

        return value in true_value_list

    def _env_num(
        self,
        name: str,
        default_value: Union[int, float],
        min_value: Optional[Union[int, float]] = None,
        max_value: Optional[Union[int, float]] = None,
    ) -> Union[int, float]:
        value = self._env.get(name, None)
        if value is None:
            return default_value

        try:
            if isinstance(default_value, int):
                value = int(value, base=10)
            else:
                value = float(value)

            if (min_value is not None) and (value < min_value):
                LOG.error(f'{name} cannot be less than min value {min_value}')
                value = min_value
            elif (max_value is not None) and (value > max_value):
                LOG.error(f'{name} cannot be bigger than max value {max_value}')
                value = max_value
            return value
        except (ValueError, TypeError):
            LOG.error(f'{name} has bad value {value}, force to the default value {default_value}')
            return default_value

    @property
    def min_edge_length(self) -> float:
        return self._min_edge_length

    @property
    def energy_residual_tol(self) -> float:
        return self._energy_residual_tol

    @property
    def spectral_scan_div_cnt(self) -> int:
        return self._spectral_scan_div_cnt

    @property
    def spectral_bisect_tol(self) -> float:
        return self._spectral_bisect_tol

    @property
    def fem_max_iter_cnt(self) -> int:
        return self._fem_max_iter_cnt

    @property
    def fem_eigen_tol(self) -> float:
        return self._fem_eigen_tol

    @property
    def rearrangement_grid_size(self) -> int:
        return self._rearrangement_grid_size

    @property
    def feasibility_iter_cnt(self) -> int:
        return self._feasibility_iter_cnt

    @property
    def feasibility_penalty_iter_cnt(self) -> int:
        return self._feasibility_penalty_iter_cnt

    @property
    def feasibility_tol_factor(self) -> float:
        return self._feasibility_tol_factor

    @property
    def optimizer_seed_cnt(self) -> int:
        return self._optimizer_seed_cnt

    @property
    def optimizer_worker_cnt(self) -> int:
        return self._optimizer_worker_cnt

    @property
    def optimizer_penalty_weight(self) -> float:
        return self._optimizer_penalty_weight

    @property
    def optimizer_contraction_ratio(self) -> float:
        return self._optimizer_contraction_ratio

    @property
    def optimizer_tie_tol(self) -> float:
        return self._optimizer_tie_tol

    @property
    def nelder_mead_max_fev(self) -> int:
        return self._nelder_mead_max_fev

    @property
    def polish_candidate_cnt(self) -> int:
        return self._polish_candidate_cnt

    @property
    def polish_max_iter_cnt(self) -> int:
        return self._polish_max_iter_cnt

    @property
    def report_include_timing(self) -> bool:
        return self._report_include_timing

    def as_dict(self) -> Dict[str, Any]:
        return {
            'GRAPH_MIN_EDGE_LENGTH': self.min_edge_length,
            'ENERGY_RESIDUAL_TOL': self.energy_residual_tol,
            'SPECTRAL_SCAN_DIVISIONS': self.spectral_scan_div_cnt,
            'SPECTRAL_BISECT_TOL': self.spectral_bisect_tol,
            'FEM_MAX_ITERATIONS': self.fem_max_iter_cnt,
            'FEM_EIGEN_TOL': self.fem_eigen_tol,
            'REARRANGEMENT_GRID_SIZE': self.rearrangement_grid_size,
            'FEASIBILITY_ITERATIONS': self.feasibility_iter_cnt,
            'FEASIBILITY_PENALTY_ITERATIONS': self.feasibility_penalty_iter_cnt,
            'FEASIBILITY_TOL_FACTOR': self.feasibility_tol_factor,
            'OPTIMIZER_SEED_COUNT': self.optimizer_seed_cnt,
            'OPTIMIZER_WORKER_COUNT': self.optimizer_worker_cnt,
            'OPTIMIZER_PENALTY_WEIGHT': self.optimizer_penalty_weight,
            'OPTIMIZER_CONTRACTION_RATIO': self.optimizer_contraction_ratio,
            'OPTIMIZER_TIE_TOL': self.optimizer_tie_tol,
            'NELDER_MEAD_MAX_FEV': self.nelder_mead_max_fev,
            'POLISH_CANDIDATE_COUNT': self.polish_candidate_cnt,
            'POLISH_MAX_ITERATIONS': self.polish_max_iter_cnt,
            'REPORT_INCLUDE_TIMING': self.report_include_timing,
        }

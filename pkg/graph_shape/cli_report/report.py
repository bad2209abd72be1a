from __future__ import annotations

import dataclasses
import json
import logging
from typing import Any, Dict, List, Optional

import numpy as np

from ..common.config import Config
from ..common.utils import fmt_float
from ..dirichlet_energy import solve_energy
from ..fem_oracle import fem_energy, fem_lambda1
from ..graph_core import MetricGraph
from ..optimizer import Functional, Optimum, ProblemSpec
from ..spectral import lambda1


LOG = logging.getLogger(__name__)

TEXT_DIGITS = 12


class ReportEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        return json.JSONEncoder.default(self, obj)


@dataclasses.dataclass(frozen=True)
class OracleComparison:
    subdivision_cnt: int
    exact: float
    fem: float
    fem_fine: float

    @property
    def error(self) -> float:
        return abs(self.exact - self.fem)

    @property
    def error_fine(self) -> float:
        return abs(self.exact - self.fem_fine)

    @property
    def richardson_ratio(self) -> Optional[float]:
        """Error ratio between n and 2n subdivisions, close to 4 for a second order scheme."""
        if self.error_fine == 0.0:
            return None
        return self.error / self.error_fine

    def as_dict(self) -> Dict[str, Any]:
        return {
            'subdivisions': self.subdivision_cnt,
            'exact': self.exact,
            'fem': self.fem,
            'fem_fine': self.fem_fine,
            'error': self.error,
            'error_fine': self.error_fine,
            'richardson_ratio': self.richardson_ratio,
        }


def oracle_comparison(g: MetricGraph, functional: Functional, n: int, config: Optional[Config] = None) -> OracleComparison:
    config = config or Config()
    if functional == Functional.Energy:
        exact = solve_energy(g, config).energy
        fem, fem_fine = fem_energy(g, n), fem_energy(g, 2 * n)
    else:
        exact = lambda1(g, config).lambda1
        fem, fem_fine = fem_lambda1(g, n, config), fem_lambda1(g, 2 * n, config)
    return OracleComparison(subdivision_cnt=n, exact=exact, fem=fem, fem_fine=fem_fine)


@dataclasses.dataclass(frozen=True, eq=False)
class Report:
    spec: ProblemSpec
    optimum: Optimum
    oracle: Optional[OracleComparison] = None
    config_dict: Dict[str, Any] = dataclasses.field(default_factory=dict)
    elapsed: Optional[float] = None
    include_timing: bool = False

    def as_dict(self) -> Dict[str, Any]:
        result = {
            'spec': self.spec.as_dict(),
            'optimum': self.optimum.as_dict(),
            'audit': None if self.optimum.audit is None else self.optimum.audit.as_dict(),
            'oracle': None if self.oracle is None else self.oracle.as_dict(),
            'config': self.config_dict,
        }
        if self.include_timing:
            result['elapsed'] = self.elapsed
        return result

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), cls=ReportEncoder, sort_keys=True, indent=2) + '\n'

    def to_text(self) -> str:
        opt = self.optimum
        line_list: List[str] = [
            f'functional:    {opt.functional.value}',
            f'total length:  {fmt_float(self.spec.total_length, TEXT_DIGITS)}',
            f'topology:      {opt.topology.canonical_code}',
            f'value:         {fmt_float(opt.value, TEXT_DIGITS)}',
            f'embeddable:    {opt.embeddable.value if opt.embeddable is not None else "-"}',
        ]
        if opt.contracted_from is not None:
            line_list.append(f'contracted:    {opt.contracted_from}')

        line_list.append('')
        line_list.append(f'{"edge":>4}  {"u":>3}  {"v":>3}  {"length":>20}')
        for idx, ((u, v), length) in enumerate(zip(opt.topology.edge_list, opt.length_list)):
            line_list.append(f'{idx:>4}  {opt.topology.vertex_list[u].label:>3}  '
                             f'{opt.topology.vertex_list[v].label:>3}  {fmt_float(length, TEXT_DIGITS):>20}')

        line_list.append('')
        for idx, vertex in enumerate(opt.topology.vertex_list):
            point = ', '.join(fmt_float(x, TEXT_DIGITS) for x in opt.placement.point(idx))
            line_list.append(f'{idx:>4}  {vertex.label:>3}  ({point})')

        if opt.audit is not None:
            line_list.append('')
            line_list.append(f'audit passed:  {opt.audit.passed}')
        if self.oracle is not None:
            ratio = self.oracle.richardson_ratio
            line_list.append('')
            line_list.append(f'FEM n={self.oracle.subdivision_cnt}:  {fmt_float(self.oracle.fem, TEXT_DIGITS)} '
                             f'(error {fmt_float(self.oracle.error, TEXT_DIGITS)})')
            line_list.append(f'Richardson:    {"-" if ratio is None else fmt_float(ratio, TEXT_DIGITS)}')
        if self.elapsed is not None:
            line_list.append(f'elapsed:       {self.elapsed:.3f} s')
        return '\n'.join(line_list) + '\n'


def build_report(
    spec: ProblemSpec,
    optimum: Optimum,
    oracle_subdivision_cnt: Optional[int] = None,
    config: Optional[Config] = None,
    elapsed: Optional[float] = None,
) -> Report:
    config = config or Config()
    oracle = None
    if oracle_subdivision_cnt is not None:
        oracle = oracle_comparison(optimum.graph(), spec.functional, oracle_subdivision_cnt, config)
        LOG.info(f'oracle n={oracle_subdivision_cnt}: error {oracle.error!r}, ratio {oracle.richardson_ratio!r}')
    return Report(
        spec=spec,
        optimum=optimum,
        oracle=oracle,
        config_dict=config.as_dict(),
        elapsed=elapsed,
        include_timing=config.report_include_timing,
    )

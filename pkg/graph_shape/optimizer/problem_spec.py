from __future__ import annotations

import dataclasses
import itertools
import json
import math
from enum import Enum
from typing import Any, Dict, Tuple

import numpy as np

from ..common.constants import ENERGY_FUNCTIONAL_NAME, LAMBDA1_FUNCTIONAL_NAME
from ..common.errors import ProblemFormatError


class Functional(Enum):
    Energy = ENERGY_FUNCTIONAL_NAME
    Lambda1 = LAMBDA1_FUNCTIONAL_NAME

    @staticmethod
    def from_name(name: str) -> Functional:
        for value in Functional:
            if value.value == name:
                return value
        raise ProblemFormatError(f'unknown functional "{name}"', field='functional')


@dataclasses.dataclass(frozen=True)
class ProblemSpec:
    dimension: int
    pin_list: Tuple[Tuple[float, ...], ...]
    total_length: float
    functional: Functional = Functional.Energy

    @property
    def pin_cnt(self) -> int:
        return len(self.pin_list)

    def pin_array(self) -> np.ndarray:
        return np.array(self.pin_list, dtype=float).reshape(self.pin_cnt, self.dimension)

    def max_pin_distance(self) -> float:
        return max((math.dist(p, q) for p, q in itertools.combinations(self.pin_list, 2)), default=0.0)

    def with_overrides(self, total_length: float = None, functional: Functional = None) -> ProblemSpec:
        return dataclasses.replace(
            self,
            total_length=self.total_length if total_length is None else float(total_length),
            functional=self.functional if functional is None else functional,
        )

    def as_dict(self) -> Dict[str, Any]:
        return {
            'dimension': self.dimension,
            'pins': [list(p) for p in self.pin_list],
            'total_length': self.total_length,
            'functional': self.functional.value,
        }


def validate_problem(spec: ProblemSpec) -> None:
    if spec.dimension < 1:
        raise ProblemFormatError('dimension must be positive', field='dimension')
    if spec.pin_cnt < 1:
        raise ProblemFormatError('at least one pin is required', field='pins')
    for idx, pin in enumerate(spec.pin_list):
        if len(pin) != spec.dimension:
            raise ProblemFormatError(f'expected {spec.dimension} coordinates', field=f'pins[{idx}]')
        if not all(math.isfinite(x) for x in pin):
            raise ProblemFormatError('coordinates must be finite', field=f'pins[{idx}]')
    if len(set(spec.pin_list)) != spec.pin_cnt:
        raise ProblemFormatError('pins must be pairwise distinct', field='pins')
    if not (math.isfinite(spec.total_length) and spec.total_length > 0.0):
        raise ProblemFormatError('total length must be positive', field='total_length')


def _number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFormatError(f'number expected, got {type(value).__name__}', field=field)
    return float(value)


def problem_from_dict(src: Any) -> ProblemSpec:
    if not isinstance(src, dict):
        raise ProblemFormatError('object expected')
    for field in ('dimension', 'pins', 'total_length'):
        if field not in src:
            raise ProblemFormatError('missing value', field=field)

    dimension = src['dimension']
    if isinstance(dimension, bool) or not isinstance(dimension, int):
        raise ProblemFormatError('integer expected', field='dimension')
    if not isinstance(src['pins'], list):
        raise ProblemFormatError('list expected', field='pins')

    pin_list = list()
    for idx, pin in enumerate(src['pins']):
        if not isinstance(pin, list):
            raise ProblemFormatError('coordinate list expected', field=f'pins[{idx}]')
        pin_list.append(tuple(_number(x, f'pins[{idx}]') for x in pin))

    functional_name = src.get('functional', ENERGY_FUNCTIONAL_NAME)
    if not isinstance(functional_name, str):
        raise ProblemFormatError('string expected', field='functional')

    spec = ProblemSpec(
        dimension=dimension,
        pin_list=tuple(pin_list),
        total_length=_number(src['total_length'], 'total_length'),
        functional=Functional.from_name(functional_name),
    )
    validate_problem(spec)
    return spec


def parse_problem(text: str) -> ProblemSpec:
    try:
        src = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(exc.msg, line=exc.lineno)
    return problem_from_dict(src)


def load_problem(path: str) -> ProblemSpec:
    try:
        with open(path, 'r', encoding='utf-8') as problem_file:
            text = problem_file.read()
    except OSError as exc:
        raise ProblemFormatError(f'cannot read {path}: {exc.strerror}')
    return parse_problem(text)

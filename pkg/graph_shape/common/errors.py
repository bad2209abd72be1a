from __future__ import annotations

from typing import Any, Dict, Optional


class GraphShapeError(Exception):
    def __init__(self, message: str, code: int = 1, data: Optional[Any] = None):
        super().__init__(message, code, data)
        self._code = code
        self._msg = message
        self._data = data

    @property
    def code(self) -> int:
        return self._code

    def get_error(self) -> Dict[str, Any]:
        error = {'code': self._code, 'message': self._msg}
        if self._data:
            error['data'] = self._data
        return error

    def __str__(self) -> str:
        return self._msg


class GraphValidationError(GraphShapeError):
    def __init__(self, diagnostics: Any):
        super().__init__(f'graph is not admissible: {diagnostics}')
        self._diagnostics = diagnostics

    @property
    def diagnostics(self) -> Any:
        return self._diagnostics


class GraphContractionError(GraphShapeError):
    def __init__(self, first_vertex_id: int, second_vertex_id: int):
        super().__init__(f'contraction merges Dirichlet vertices {first_vertex_id} and {second_vertex_id}')
        self._vertex_id_pair = (first_vertex_id, second_vertex_id)

    @property
    def vertex_id_pair(self):
        return self._vertex_id_pair


class EdgeRangeError(GraphShapeError):
    def __init__(self, edge_id: Any, position: float, length: float):
        super().__init__(f'position {position!r} is outside of the edge {edge_id} with length {length!r}')
        self._edge_id = edge_id
        self._position = position


class NoDirichletVertexError(GraphShapeError):
    def __init__(self):
        super().__init__('graph has no Dirichlet vertex, the functional is unbounded below')


class SingularSystemError(GraphShapeError):
    pass


class SpectralResonanceError(GraphShapeError):
    def __init__(self, k: float, edge_id: int):
        super().__init__(f'k={k!r} is a resonance of the edge {edge_id}')
        self._k = k
        self._edge_id = edge_id

    @property
    def k(self) -> float:
        return self._k

    @property
    def edge_id(self) -> int:
        return self._edge_id


class SpectralBracketError(GraphShapeError):
    def __init__(self, k_hi: float):
        super().__init__(f'spectral bracket failure: no sign change below k={k_hi!r}')


class FemMeshError(GraphShapeError):
    pass


class FemConvergenceError(GraphShapeError):
    def __init__(self, iter_cnt: int, rel_change: float):
        super().__init__(f'inverse iteration did not converge after {iter_cnt} steps, last change {rel_change!r}')


class TopologyError(GraphShapeError):
    pass


class ProblemFormatError(GraphShapeError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = ''
        if line is not None:
            location += f' at line {line}'
        if field is not None:
            location += f' in field "{field}"'
        super().__init__(f'bad problem{location}: {message}', code=3)
        self._field = field
        self._line = line

    @property
    def field(self) -> Optional[str]:
        return self._field

    @property
    def line(self) -> Optional[int]:
        return self._line


class InfeasibleSpecError(GraphShapeError):
    def __init__(self, total_length: float, detail: str = ''):
        message = f'total length below Steiner feasibility (L={total_length!r})'
        if detail:
            message += f': {detail}'
        super().__init__(message, code=2)
        self._total_length = total_length

    @property
    def total_length(self) -> float:
        return self._total_length

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import List, Optional, TextIO

from ..common.config import Config
from ..common.constants import (
    ENERGY_FUNCTIONAL_NAME, LAMBDA1_FUNCTIONAL_NAME,
    EXIT_OK, EXIT_INTERNAL_ERROR, EXIT_INFEASIBLE, EXIT_BAD_INPUT,
)
from ..common.errors import GraphShapeError, InfeasibleSpecError, ProblemFormatError
from ..optimizer import Functional, load_problem, optimize
from ..topology import TopologyCatalog
from .report import build_report
from .svg_drawer import write_svg


LOG = logging.getLogger(__name__)

DEFAULT_ORACLE_SUBDIVISION_CNT = 128


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting, so the caller owns the exit status."""

    def error(self, message: str):
        raise UsageError(message)


class GraphShapeHandler:
    def __init__(self, out: TextIO = sys.stdout):
        self._out = out
        self.command = 'graph-shape'

    @staticmethod
    def init_args_parser(out: TextIO = sys.stdout) -> GraphShapeHandler:
        h = GraphShapeHandler(out)
        h.parser = ArgumentParser(prog=h.command, description='Optimal metric graphs for pinned Dirichlet energy.')
        h.parser.add_argument('problem_file', type=str, nargs='?', help='problem specification in json')
        h.parser.add_argument('--functional', choices=[ENERGY_FUNCTIONAL_NAME, LAMBDA1_FUNCTIONAL_NAME],
                              help='override the functional of the problem file')
        h.parser.add_argument('--length', type=float, help='override the total length of the problem file')
        h.parser.add_argument('--oracle-check', type=int, nargs='?', const=DEFAULT_ORACLE_SUBDIVISION_CNT,
                              metavar='N', help='compare with finite elements on N and 2N subdivisions per edge')
        h.parser.add_argument('--svg', type=str, metavar='PATH', help='draw the placement')
        h.parser.add_argument('--out', type=str, metavar='PATH', help='write the json report')
        h.parser.add_argument('--list-topologies', type=int, metavar='K', help='print the skeletons for K pins')
        h.parser.add_argument('--seeds', type=int, metavar='N', help='number of multi-starts per skeleton')
        h.parser.add_argument('--topology', type=str, action='append', metavar='CODE',
                              help='restrict the search to the skeleton with this canonical code')
        return h

    def _config(self, args) -> Config:
        if args.seeds is None:
            return Config()
        if args.seeds < 1:
            raise UsageError('--seeds must be positive')
        return Config(env=dict(os.environ, OPTIMIZER_SEED_COUNT=str(args.seeds)))

    def _list_topologies(self, k: int) -> None:
        if k < 1:
            raise UsageError('--list-topologies needs a positive pin count')
        topology_list = TopologyCatalog().get_topology_list(k)
        for idx, topology in enumerate(topology_list):
            vertex_str = ' '.join(v.label for v in topology.vertex_list)
            edge_str = ' '.join(f'{u}-{v}' for u, v in topology.edge_list)
            print(f'{idx:>4}  {topology.canonical_code}  [{vertex_str}]  [{edge_str}]', file=self._out)
        print(f'total: {len(topology_list)}', file=self._out)

    def _optimize(self, args) -> None:
        if args.problem_file is None:
            raise UsageError('a problem file is required')

        config = self._config(args)
        spec = load_problem(args.problem_file).with_overrides(
            total_length=args.length,
            functional=None if args.functional is None else Functional.from_name(args.functional),
        )

        start = time.monotonic()
        optimum = optimize(spec, config, topology_filter=args.topology)
        elapsed = time.monotonic() - start

        report = build_report(spec, optimum, args.oracle_check, config, elapsed)
        self._out.write(report.to_text())
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as out_file:
                out_file.write(report.to_json())
        if args.svg:
            write_svg(optimum, args.svg)

    def execute(self, args) -> None:
        if args.list_topologies is not None:
            self._list_topologies(args.list_topologies)
        else:
            self._optimize(args)


def run(argv: Optional[List[str]] = None, out: TextIO = sys.stdout) -> int:
    handler = GraphShapeHandler.init_args_parser(out)
    try:
        args = handler.parser.parse_args(argv)
        handler.execute(args)
        return EXIT_OK
    except UsageError as exc:
        print(f'{handler.parser.format_usage()}{handler.command}: error: {exc}', file=sys.stderr)
        return EXIT_BAD_INPUT
    except ProblemFormatError as exc:
        print(f'{handler.command}: {exc}', file=sys.stderr)
        return EXIT_BAD_INPUT
    except InfeasibleSpecError as exc:
        print(f'{handler.command}: {exc}', file=sys.stderr)
        return EXIT_INFEASIBLE
    except GraphShapeError as exc:
        LOG.error(f'{handler.command} failed: {exc.get_error()}', exc_info=exc)
        return EXIT_INTERNAL_ERROR
    except Exception as exc:
        LOG.error(f'{handler.command} failed', exc_info=exc)
        return EXIT_INTERNAL_ERROR

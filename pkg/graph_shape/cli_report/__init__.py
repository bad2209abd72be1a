from .report import ReportEncoder, OracleComparison, Report, oracle_comparison, build_report
from .svg_drawer import SvgBuilder, draw_optimum, write_svg
from .cli import GraphShapeHandler, run

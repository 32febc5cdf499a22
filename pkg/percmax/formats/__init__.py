"""Grid files, JSON reports and SVG rendering."""

from .gridfile import dumps, format_grid, oracle_document, parse_grid, read_grid, report_document
from .render import render_svg, write_svg

__all__ = [
    "dumps",
    "format_grid",
    "oracle_document",
    "parse_grid",
    "read_grid",
    "report_document",
    "render_svg",
    "write_svg",
]

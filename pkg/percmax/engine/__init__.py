"""Bootstrap percolation engine: topologies, simulation and rectangle geometry."""

from .topology import CellSet, Topology
from .simulator import closure, neighbour_counts, simulate, step
from .geometry import (
    MergeNode,
    RectDecomposition,
    is_internally_spanned,
    rectangle_process,
    semi_perimeter,
    set_distance,
    span_time,
    union_span_time,
)

__all__ = [
    "CellSet",
    "Topology",
    "closure",
    "neighbour_counts",
    "simulate",
    "step",
    "MergeNode",
    "RectDecomposition",
    "is_internally_spanned",
    "rectangle_process",
    "semi_perimeter",
    "set_distance",
    "span_time",
    "union_span_time",
]

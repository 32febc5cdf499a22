"""percmax: maximum percolation times for 2-neighbour bootstrap percolation on finite grids."""

__version__ = "0.1.0"

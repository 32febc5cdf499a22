"""Synchronous r-neighbour bootstrap percolation on boxes and tori."""

import logging
from typing import List

import numpy as np

from percmax.engine.rows import PackedRows
from percmax.engine.topology import CellSet, Topology
from percmax.models import NEVER, InfectionReport

logger = logging.getLogger(__name__)


def _shifted(mask: np.ndarray, axis: int, offset: int) -> np.ndarray:
    out = np.zeros_like(mask)
    src = [slice(None)] * mask.ndim
    dst = [slice(None)] * mask.ndim
    if offset > 0:
        src[axis], dst[axis] = slice(None, -1), slice(1, None)
    else:
        src[axis], dst[axis] = slice(1, None), slice(None, -1)
    out[tuple(dst)] = mask[tuple(src)]
    return out


def neighbour_counts(mask: np.ndarray, topology: Topology) -> np.ndarray:
    """Number of infected neighbours of every cell of a boolean mask."""
    counts = np.zeros(mask.shape, dtype=np.int8)
    for axis in range(mask.ndim):
        if topology.kind == "torus":
            counts += np.roll(mask, 1, axis=axis)
            counts += np.roll(mask, -1, axis=axis)
        else:
            counts += _shifted(mask, axis, 1)
            counts += _shifted(mask, axis, -1)
    return counts


def step(state: CellSet, topology: Topology) -> CellSet:
    """
    Advance the process by one synchronous round.

    Args:
        state: Currently infected cells
        topology: Grid the cells live on

    Returns:
        The previous cells plus every healthy cell with at least
        `threshold` infected neighbours

    Raises:
        InvalidInputError: If a cell lies outside the grid
    """
    topology.check(state)
    mask = state.to_mask(topology.dims)
    if topology.d == 2:
        width, height = topology.dims
        rows = PackedRows(width, height, wrap=topology.kind == "torus")
        grown = rows.unpack(rows.step(rows.pack(mask), topology.threshold))
    else:
        grown = mask | (neighbour_counts(mask, topology) >= topology.threshold)
    return CellSet.from_mask(grown)


def simulate(initial: CellSet, topology: Topology, trace: bool = False) -> InfectionReport:
    """
    Run the process to its fixed point and record every infection time.

    Each round only inspects neighbours of the cells infected in the
    previous round, so the whole run costs O(cells * degree).

    Args:
        initial: Initially infected cells
        topology: Grid to run on
        trace: Also record the list of cells infected at each step

    Returns:
        InfectionReport with row-major times (-1 for never)

    Raises:
        InvalidInputError: If a cell lies outside the grid
    """
    topology.check(initial)
    size = topology.size
    axes = list(zip(topology.strides, topology.dims))
    wrap = topology.kind == "torus"
    threshold = topology.threshold

    times: List[int] = [-1] * size
    counts = bytearray(size)
    frontier = [topology.index(cell) for cell in initial.sorted()]
    for i in frontier:
        times[i] = 0

    step_counts: List[int] = []
    frontiers: List[List[tuple]] = []
    infected = len(frontier)
    t = 0
    while frontier:
        fresh = []
        for i in frontier:
            for stride, extent in axes:
                x = (i // stride) % extent
                # forward neighbour; on the torus the last cell wraps to the first
                if x + 1 < extent:
                    j = i + stride
                elif wrap:
                    j = i - (extent - 1) * stride
                else:
                    j = -1
                if j >= 0 and times[j] < 0:
                    counts[j] += 1
                    if counts[j] == threshold:
                        fresh.append(j)
                # backward neighbour
                if x > 0:
                    j = i - stride
                elif wrap:
                    j = i + (extent - 1) * stride
                else:
                    continue
                if times[j] < 0:
                    counts[j] += 1
                    if counts[j] == threshold:
                        fresh.append(j)
        if not fresh:
            break
        # a count hits the threshold once, so fresh has no repeats
        t += 1
        for j in fresh:
            times[j] = t
        step_counts.append(len(fresh))
        if trace:
            frontiers.append([topology.cell(j) for j in sorted(fresh)])
        infected += len(fresh)
        frontier = fresh

    percolated = infected == size
    logger.debug("Simulated %s %s: %d/%d infected after %d steps", topology.kind, topology.dims, infected, size, t)
    return InfectionReport(
        dims=topology.dims,
        topology=topology.kind,
        threshold=threshold,
        initial=initial.sorted(),
        times=times,
        total_time=t if percolated else NEVER,
        percolated=percolated,
        step_counts=step_counts,
        frontiers=frontiers if trace else None,
    )


def closure(initial: CellSet, topology: Topology) -> CellSet:
    """Every cell that is eventually infected starting from the initial set."""
    report = simulate(initial, topology)
    mask = (np.asarray(report.times, dtype=np.int64) >= 0).reshape(topology.shape)
    return CellSet.from_mask(mask)

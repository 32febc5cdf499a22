"""Process-pool dispatch of independent work items."""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from math import ceil
from typing import Any, Callable, List, Sequence, Tuple

from percmax.utils.exceptions import PercolationError

logger = logging.getLogger(__name__)


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """
    Partition [0, total) into contiguous half-open chunks.

    Args:
        total: Size of the range
        parts: Desired number of chunks

    Returns:
        List of (start, end) pairs in increasing order, none empty
    """
    if total <= 0:
        return []
    size = ceil(total / max(1, parts))
    return [(start, min(start + size, total)) for start in range(0, total, size)]


async def _gather(func: Callable[..., Any], args_list: Sequence[tuple], jobs: int) -> List[Any]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, func, *args) for args in args_list]
        return await asyncio.gather(*tasks, return_exceptions=True)


def run_ranges(func: Callable[..., Any], args_list: Sequence[tuple], jobs: int = 1) -> List[Any]:
    """
    Evaluate func over every argument tuple, in order.

    With jobs == 1 the calls run in-process; otherwise they are spread over
    a process pool. Results keep the order of args_list either way.

    Args:
        func: Picklable module-level callable
        args_list: Argument tuples, one per work item
        jobs: Number of worker processes

    Returns:
        List of results aligned with args_list

    Raises:
        PercolationError: If a worker fails
    """
    if jobs <= 1 or len(args_list) <= 1:
        return [func(*args) for args in args_list]

    logger.info("Dispatching %d work items to %d workers", len(args_list), jobs)
    results = asyncio.run(_gather(func, args_list, jobs))

    for result in results:
        if isinstance(result, PercolationError):
            raise result
        if isinstance(result, Exception):
            raise PercolationError(f"Worker failed: {str(result)}") from result
    return results

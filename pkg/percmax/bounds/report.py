"""Sweep of lower bound, slow-set time, M(n, n) and upper envelope over n."""

import csv
import io
import logging
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from percmax.bounds.constructions import slow_set
from percmax.bounds.formulas import f_upper_max, lower_bound_value
from percmax.engine import Topology, simulate
from percmax.recurrence import MemoTable, default_table, max_time
from percmax.utils.exceptions import ConsistencyError
from percmax.utils.parallel import run_ranges

logger = logging.getLogger(__name__)

CSV_HEADER = ["n", "lower", "slow_sim", "M", "upper"]


class BoundsRow(BaseModel):
    """One row of the sandwich lower <= slow_sim <= M <= upper."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    lower: Fraction
    slow_sim: int
    M: int
    upper: Fraction

    @property
    def sandwiched(self) -> bool:
        return self.lower <= self.slow_sim <= self.M <= self.upper

    def cells(self) -> List[str]:
        return [str(self.n), str(self.lower), str(self.slow_sim), str(self.M), str(self.upper)]


def _slow_time(n: int) -> int:
    report = simulate(slow_set(n), Topology.box(n, n))
    if not report.percolated:
        raise ConsistencyError(f"Slow set for n={n} does not percolate")
    return report.total_time


def bounds_report(nmax: int, jobs: int = 1, table: Optional[MemoTable] = None) -> List[BoundsRow]:
    """
    Rows for n = 6..nmax, each checked against the sandwich.

    Args:
        nmax: Largest n; below 6 the report is empty
        jobs: Worker processes for the slow-set simulations
        table: Memo table for M(n, n)

    Returns:
        List of BoundsRow in increasing n

    Raises:
        ConsistencyError: If some row is not sandwiched
    """
    ns = list(range(6, nmax + 1))
    if not ns:
        return []
    table = table or default_table()
    table.ensure(nmax, nmax)
    logger.info("Bounds sweep for n=6..%d with %d jobs", nmax, jobs)
    slow_times = run_ranges(_slow_time, [(n,) for n in ns], jobs)

    rows = []
    for n, slow in zip(ns, slow_times):
        row = BoundsRow(n=n, lower=lower_bound_value(n), slow_sim=slow, M=max_time(n, n, table), upper=f_upper_max(n)[1])
        if not row.sandwiched:
            raise ConsistencyError(f"Bounds out of order at n={n}: {', '.join(row.cells())}")
        rows.append(row)
    return rows


def format_bounds_csv(rows: List[BoundsRow]) -> str:
    """CSV text with exact rationals written as p/q."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())
    return buffer.getvalue()

"""Coordinator that splits an evaluator's search space over worker processes."""

import logging
from typing import Optional

from percmax.oracle.base import RangeEvaluator, RangeResult
from percmax.utils.exceptions import ConsistencyError, InvalidInputError, PercolationError
from percmax.utils.parallel import run_ranges, split_range

logger = logging.getLogger(__name__)


def _evaluate(evaluator: RangeEvaluator, start: int, end: int) -> RangeResult:
    return evaluator.evaluate_range(start, end)


class OracleCoordinator:
    """Runs a RangeEvaluator over contiguous ranges and reduces the results in order."""

    def __init__(self, jobs: int = 1, chunks_per_job: int = 4):
        """
        Initialize the coordinator.

        Args:
            jobs: Worker processes; 1 runs everything in-process
            chunks_per_job: Ranges handed to each worker
        """
        if jobs < 1:
            raise InvalidInputError(f"jobs must be at least 1, got {jobs}")
        self.jobs = jobs
        self.chunks_per_job = chunks_per_job

    def run(self, evaluator: RangeEvaluator, parts: Optional[int] = None) -> RangeResult:
        """
        Evaluate the whole search space of an evaluator.

        Args:
            evaluator: Evaluator to run
            parts: Number of ranges; defaults to jobs * chunks_per_job

        Returns:
            Reduced RangeResult, identical for any number of jobs

        Raises:
            PercolationError: If a range fails
        """
        ranges = split_range(evaluator.total, parts or self.jobs * self.chunks_per_job)
        logger.info(
            "%s on %dx%d: %d patterns in %d ranges, %d jobs",
            type(evaluator).__name__, evaluator.k, evaluator.l, evaluator.total, len(ranges), self.jobs,
        )
        try:
            results = run_ranges(_evaluate, [(evaluator, start, end) for start, end in ranges], self.jobs)
            for (start, end), part in zip(ranges, results):
                logger.debug("Range [%d, %d): best %d, %d simulated", start, end, part.best_time, part.simulated)
            return evaluator.reduce(results)
        except (InvalidInputError, ConsistencyError):
            raise
        except PercolationError:
            raise
        except Exception as e:
            raise PercolationError(f"Oracle run failed: {str(e)}") from e

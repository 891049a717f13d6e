from concurrent.futures import ProcessPoolExecutor

from .config import config
from .logging import setup_logger

logger = setup_logger('workers')


class WorkerPool:
    """Order-preserving map over independent jobs.

    jobs <= 1 runs in-process; otherwise a process pool, so functions and
    items must be picklable.
    """

    def __init__(self, jobs=None):
        self.jobs = config.jobs() if jobs is None else max(1, int(jobs))

    def map(self, func, items):
        items = list(items)
        if self.jobs <= 1 or len(items) <= 1:
            return [func(item) for item in items]
        logger.debug(f"Dispatching {len(items)} jobs to {self.jobs} workers")
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            return list(executor.map(func, items))

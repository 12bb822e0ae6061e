"""Share-nothing worker pool for independent runs."""

from concurrent.futures import ProcessPoolExecutor


def run_jobs(fn, tasks, jobs=1):
    """Apply ``fn`` to every task; results come back in task order.

    ``jobs <= 1`` runs in-process, which keeps tracebacks and determinism simple.
    """
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))

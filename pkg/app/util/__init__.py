import sys
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

from nachricht import setup_logging


logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """
    Set up logging with nachricht, then apply the level from
    `Config.LOGGING` or the one given. Records never go to stdout:
    it carries the reports.
    """
    from ..config import Config

    setup_logging()
    root = logging.getLogger()
    level = level or Config.LOGGING["level"]
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    for handler in root.handlers:
        if isinstance(handler, logging.StreamHandler) and handler.stream is sys.stdout:
            handler.setStream(sys.stderr)


def worker_count() -> int:
    """Number of worker processes, from GRIDSLICE_THREADS."""
    from ..config import Config

    default = Config.WORKERS["default_threads"]
    raw = Config.WORKERS.get("threads")
    if raw in (None, ""):
        return default
    try:
        value = int(raw)
    except (TypeError, ValueError):
        logger.warning("GRIDSLICE_THREADS='%s' is not an integer, using %d.", raw, default)
        return default
    if value < 1:
        logger.warning("GRIDSLICE_THREADS=%d is not positive, using %d.", value, default)
        return default
    return value


def run_tasks(
    fn: Callable[[Any], Any],
    items: Iterable[Any],
    workers: Optional[int] = None,
) -> List[Any]:
    """
    Apply `fn` to every item, in a process pool when more than one worker
    is configured. Results come back in input order.

    `fn` must be a module-level function so that it pickles.
    """
    items = list(items)
    workers = workers or worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.info("Running %d tasks on %d workers.", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))

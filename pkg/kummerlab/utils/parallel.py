"""Deterministic block-parallel execution.

Work is cut into disjoint, ordered blocks. Results always come back in block
order, whatever the worker count, so reductions over them are reproducible.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from kummerlab.config import settings
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


def block_ranges(start: int, stop: int, size: int) -> List[Tuple[int, int]]:
    """Split the half-open range [start, stop) into consecutive blocks."""
    if size < 1:
        raise ValueError("block size must be positive")
    return [(lo, min(lo + size, stop)) for lo in range(start, stop, size)]


def resolve_workers(workers: Optional[int]) -> int:
    """Worker count from the argument or the configured default."""
    count = settings.WORKERS if workers is None else workers
    return max(1, int(count))


def run_blocks(
    fn: Callable[..., Any],
    args: Sequence[Tuple[Any, ...]],
    workers: Optional[int] = None,
) -> List[Any]:
    """Apply ``fn(*a)`` to every argument tuple, returning results in input order.

    ``fn`` must be a module-level function when more than one worker is used.
    """
    count = resolve_workers(workers)
    if count == 1 or len(args) <= 1:
        return [fn(*a) for a in args]

    logger.debug(f"Dispatching {len(args)} blocks to {count} workers")
    with ProcessPoolExecutor(max_workers=count) as pool:
        futures = [pool.submit(fn, *a) for a in args]
        return [f.result() for f in futures]


def first_hit(
    fn: Callable[..., Optional[Any]],
    args: Iterable[Tuple[Any, ...]],
    workers: Optional[int] = None,
    wave: Optional[int] = None,
) -> Optional[Any]:
    """Return the result of the earliest block (in input order) that is not None.

    Blocks are evaluated in waves of ``wave`` blocks; within a wave all blocks
    run, and the earliest non-None result wins, so the answer does not depend
    on scheduling.
    """
    count = resolve_workers(workers)
    wave = wave or max(1, 2 * count)
    pending = list(args)

    if count == 1:
        for a in pending:
            result = fn(*a)
            if result is not None:
                return result
        return None

    with ProcessPoolExecutor(max_workers=count) as pool:
        for i in range(0, len(pending), wave):
            chunk = pending[i:i + wave]
            futures = [pool.submit(fn, *a) for a in chunk]
            results = [f.result() for f in futures]
            for result in results:
                if result is not None:
                    return result
    return None

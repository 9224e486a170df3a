import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from typing import Any, Callable, List, Sequence

logger = logging.getLogger(__name__)

# galois compiles through numba, whose OpenMP runtime does not survive fork()
_context = multiprocessing.get_context('spawn')


def shard_map(
    func: Callable[..., List[Any]], items: Sequence[Any], workers: int = 1, *args
) -> List[Any]:
    """
    Split ``items`` into one chunk per worker, call ``func(chunk, *args)`` on
    every chunk and concatenate the results in chunk order. Falls back to a
    single process if the pool cannot be used.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return list(func(items, *args))

    size = -(-len(items) // workers)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    try:
        with ProcessPoolExecutor(max_workers=workers, mp_context=_context) as pool:
            results = pool.map(func, chunks, *[[arg] * len(chunks) for arg in args])
            return [item for chunk in results for item in chunk]
    except (BrokenProcessPool, OSError) as e:
        logger.warning('Worker pool failed (%s), running in a single process', e)
        return list(func(items, *args))


# vim:sw=4:ts=4:et:

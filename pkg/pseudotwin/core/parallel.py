"""
Block-parallel evaluation of pure functions.

Work is split into blocks whose boundaries depend only on the problem
size, evaluated by a pool of threads and returned in block order, so
that reductions performed by the caller do not depend on the number
of threads.
"""

import os
import logging
from concurrent.futures import ThreadPoolExecutor

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
block_size = 2**16
"""Default number of terms per block."""
threads = None
"""Default number of worker threads, None means `default_threads()`."""


def default_threads():
    """
    Number of worker threads, from the PSEUDOTWIN_THREADS environment
    variable or the module variable `threads` (default 1).
    """
    if threads is not None:
        return max(1, int(threads))
    try:
        return max(1, int(os.environ.get('PSEUDOTWIN_THREADS', 1)))
    except ValueError:
        _log.warning('ignoring invalid PSEUDOTWIN_THREADS=%s', os.environ['PSEUDOTWIN_THREADS'])
        return 1


def split(lo, hi, size=None):
    """Return the list of (start, stop) blocks covering [lo, hi)."""
    if size is None:
        size = block_size
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


def block_map(func, blocks, nthreads=None):
    """
    Return `[func(block) for block in blocks]`, possibly evaluated by
    `nthreads` worker threads. Results are in block order.
    """
    if nthreads is None:
        nthreads = default_threads()
    blocks = list(blocks)
    if nthreads <= 1 or len(blocks) <= 1:
        return [func(block) for block in blocks]
    _log.debug('evaluating %d blocks on %d threads', len(blocks), nthreads)
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        return list(pool.map(func, blocks))

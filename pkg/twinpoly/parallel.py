import os
from concurrent.futures import ThreadPoolExecutor

from . import config


def parallel_map(func, items, parallel=None):
    """
    Multithreaded version of the builtin `map`.

    The results are returned in the order of `items` whatever the scheduling, so that
    any reduction applied afterward does not depend on the number of workers.

    Parameters
    ----------
    func : callable
        The function to apply to each item.
    items : iterable
        The items to process. It is fully consumed before any work starts.
    parallel : int or bool, optional
        The number of workers to use. See `get_workers_count`.

    Returns
    -------
    list
        The list of `func(item)` for each item.

    Examples
    --------
    >>> from twinpoly.parallel import parallel_map
    >>> parallel_map(abs, [-3, 2, -1], parallel=2)
    [3, 2, 1]

    """
    items = list(items)
    n_workers = min(len(items), get_workers_count(parallel))
    if n_workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(n_workers) as executor:
        return list(executor.map(func, items))


def get_workers_count(parallel):
    """
    Resolve the `parallel` keyword of the per-orthant sums into a thread count.

    ``None`` reads ``config.get("n_workers")``, ``False`` runs serially, ``True`` uses
    one thread per CPU and a positive integer is taken as is.

    Examples
    --------
    >>> get_workers_count(False), get_workers_count(3)
    (1, 3)

    """
    match parallel:
        case None:
            return config.get("n_workers")
        case bool():
            return os.cpu_count() if parallel else 1
        case int() if parallel >= 1:
            return parallel
        case int():
            raise ValueError(f"`parallel` must be at least 1, got {parallel}")
        case _:
            raise TypeError("`parallel` must be None, a bool or an int")

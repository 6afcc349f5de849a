"""
Worker pool and random stream helpers.
Only the CLI decides how many workers run; library code takes a `workers`
argument and routes all fan-out through parallel_map.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Apply fn to every item; results keep input order whatever the worker count."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Random stream determined by (seed, keys); independent of scheduling."""
    return np.random.default_rng([seed, *keys])


def spawn_seeds(seed: int, count: int) -> List[int]:
    return [int(x) for x in np.random.SeedSequence(seed).generate_state(count)]

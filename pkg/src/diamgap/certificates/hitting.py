"""Random hitting sets for families of large sets."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..errors import GenerationFailure, InputError

DEFAULT_RETRIES = 20


def sample_size(M: int, K: float, n_sets: int) -> int:
    """``ceil(2 (M/K) ln n)`` draws, with ``n`` floored at 2 so one set still gets a draw."""
    return math.ceil(2.0 * (M / K) * math.log(max(n_sets, 2)))


def hitting_set(
    M: int,
    sets: Sequence[Sequence[int]],
    K: float,
    seed: int,
    retries: int = DEFAULT_RETRIES,
) -> np.ndarray:
    """Sorted elements of ``range(M)`` meeting every set in ``sets``.

    Draws ``sample_size(M, K, len(sets))`` elements uniformly with
    replacement and checks the result; a miss triggers a fresh draw from a
    seed derived from ``(seed, attempt)``.
    """
    if M < 1:
        raise InputError("universe must be non-empty")
    if not K > 0:
        raise InputError("minimum set size K must be positive")
    family = [np.unique(np.asarray(s, dtype=np.int64)) for s in sets]
    for s in family:
        if s.size and (s[0] < 0 or s[-1] >= M):
            raise InputError(f"set element outside [0, {M})")
        if s.size < K - 1e-9:
            raise InputError(f"a set of size {s.size} is below the promised minimum {K}")
    if not family:
        return np.empty(0, dtype=np.int64)
    draws = sample_size(M, K, len(family))
    for attempt in range(retries):
        rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, attempt])
        picked = np.unique(rng.integers(0, M, size=draws))
        marked = np.zeros(M, dtype=bool)
        marked[picked] = True
        if all(marked[s].any() for s in family):
            return picked
    raise GenerationFailure(f"no hitting set found in {retries} draws of {draws} elements")

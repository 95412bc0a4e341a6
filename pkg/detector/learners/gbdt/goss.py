"""
Gradient-based one-side sampling.
"""
import math
from typing import Optional, Tuple

import numpy as np


def goss_sample(
    gradients: np.ndarray,
    a: float = 0.2,
    b: float = 0.1,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Keep the top ``ceil(a*n)`` rows by |g| and a random ``ceil(b*n)`` of the rest.

    Randomly kept rows are weighted by ``(1 - a) / b`` so gradient sums stay
    unbiased. With ``a = 1`` every row is kept at weight 1 and no randomness
    is consumed.

    Returns:
        tuple: (sorted row indices, weight per returned row)
    """
    magnitude = np.abs(np.asarray(gradients, dtype=float))
    n = magnitude.size
    if a >= 1.0:
        return np.arange(n), np.ones(n)

    rng = rng if rng is not None else np.random.default_rng()
    order = np.argsort(-magnitude, kind='stable')
    n_top = min(math.ceil(a * n), n)
    top, rest = order[:n_top], order[n_top:]
    n_random = min(math.ceil(b * n), rest.size)
    sampled = rng.choice(rest, size=n_random, replace=False) if n_random else np.array([], dtype=int)

    indices = np.concatenate([top, sampled])
    weights = np.concatenate([np.ones(top.size), np.full(sampled.size, (1.0 - a) / b)])
    order = np.argsort(indices, kind='stable')
    return indices[order], weights[order]

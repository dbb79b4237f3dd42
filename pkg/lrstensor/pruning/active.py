import math

import numpy as np

from ..core import as_dense, matricize, tensorize
from ..errors import ConfigError
from ..utils import budget
from .models import ActiveIndexSet


def slice_thresholds(g, alpha):
    """
    Per-mode arrays holding, for every slice, the ``floor(alpha * d_j^-)``-th
    largest absolute value (``inf`` when that budget is zero).
    """
    magnitude = np.abs(g)
    thresholds = []
    for mode in range(g.ndim):
        unfolded = matricize(magnitude, mode)
        n = unfolded.shape[1]
        k = budget(alpha, n)
        if k == 0:
            thresholds.append(np.full(unfolded.shape[0], math.inf))
            continue
        thresholds.append(np.partition(unfolded, n - k, axis=1)[:, n - k])
    return tuple(thresholds)


def _slice_top_k(magnitude, mode, threshold, k):
    """
    Exactly ``k`` entries per slice of ``mode``: everything above the slice
    threshold, then the tied entries in increasing flat index.
    """
    unfolded = matricize(magnitude, mode)
    above = unfolded > threshold[:, None]
    tied = unfolded == threshold[:, None]
    # columns of an unfolding run in increasing flat index
    room = k - np.count_nonzero(above, axis=1)
    chosen = above | (tied & (np.cumsum(tied, axis=1) <= room[:, None]))
    return tensorize(chosen, magnitude.shape, mode)


def level_alpha_active_indices(g, alpha):
    """
    Entries that rank among the ``floor(alpha * d_j^-)`` largest magnitudes
    of their slice in every mode, ties broken toward the lower flat index.
    Without ties this is ``|g| >=`` the largest slice threshold. A zero budget
    in any mode leaves the set empty.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")
    g = as_dense(g, "gradient")
    magnitude = np.abs(g)
    thresholds = slice_thresholds(g, alpha)
    mask = np.ones(g.shape, dtype=bool)
    for mode, thr in enumerate(thresholds):
        k = budget(alpha, g.size // g.shape[mode])
        if k == 0:
            mask[...] = False
            break
        mask &= _slice_top_k(magnitude, mode, thr, k)
    return ActiveIndexSet(mask, float(alpha), thresholds)

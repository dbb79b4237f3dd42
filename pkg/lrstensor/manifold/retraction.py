import math

import numpy as np

from ..core import TuckerTensor, as_dense, hosvd, hosvd_tucker
from ..errors import ConfigError


def entrywise_truncate(w, level):
    """
    Replace every entry with ``|w| > level`` by ``level * sign(w)``.
    """
    if not level >= 0:
        raise ConfigError(f"truncation level must be >= 0, got {level}")
    w = np.asarray(w, dtype=np.float64)
    if math.isinf(level):
        return w.copy()
    return np.clip(w, -level, level)


def trunc(a, tau):
    """Truncation of an observed tensor at ``tau`` (same rule as trimming)."""
    return entrywise_truncate(a, tau)


def trim(w, zeta, rank):
    """
    HOSVD at ``rank`` of ``w`` entrywise truncated at ``zeta / 2``.

    ``w`` may be dense or a :class:`TuckerTensor`. When no entry exceeds the
    truncation level, a Tucker input is decomposed through its small core, which
    gives the dense HOSVD without an SVD of the full unfoldings. ``zeta=inf``
    skips truncation.
    """
    if not zeta >= 0:
        raise ConfigError(f"zeta must be >= 0, got {zeta}")
    if isinstance(w, TuckerTensor):
        if math.isinf(zeta):
            return hosvd_tucker(w, rank)
        dense = w.to_dense()
        if np.abs(dense).max() <= zeta / 2:
            return hosvd_tucker(w, rank)
        return hosvd(entrywise_truncate(dense, zeta / 2), rank)
    return hosvd(entrywise_truncate(as_dense(w), zeta / 2), rank)

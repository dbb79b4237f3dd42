from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class ActiveIndexSet:
    """
    Level-alpha active indices of a tensor, kept as a boolean mask together
    with the per-mode slice thresholds that produced it.
    """

    mask: np.ndarray
    alpha: float
    thresholds: Tuple[np.ndarray, ...]

    @property
    def shape(self):
        return self.mask.shape

    @property
    def size(self):
        return int(np.count_nonzero(self.mask))

    def indices(self):
        return np.argwhere(self.mask)

    def as_set(self):
        return frozenset(tuple(int(i) for i in row) for row in self.indices())

    def __contains__(self, omega):
        return bool(self.mask[tuple(omega)])

    def __len__(self):
        return self.size

import math

import numpy as np

from .base import LossModel
from .config import LossKind


class GaussianLoss(LossModel):
    """``1/2 |X - A|_F^2``."""

    kind = LossKind.GAUSSIAN

    def _loss(self, x, obs):
        return 0.5 * (x - obs) ** 2

    def _derivative(self, x, obs):
        return x - obs

    def _second(self, x, obs):
        return np.ones_like(x)

    def _root(self, obs):
        return np.array(obs, dtype=np.float64)

    def curvature_bounds(self, zeta):
        return 1.0, 1.0

    def default_k_pr(self, zeta):
        return math.inf

    def deviance(self, x):
        """``d* log |A - X|_F^2``, ``-inf`` on a zero residual."""
        rss = float(np.sum((self._check(x) - self._observation) ** 2))
        if rss == 0.0:
            return -math.inf
        return self._observation.size * math.log(rss)

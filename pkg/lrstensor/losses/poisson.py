import math

import numpy as np

from ..errors import ConfigError, ObservationError
from .base import LossModel
from .config import LossKind
from .losses_conf import POISSON_K_PR_SCALE, PROB_CLAMP


class PoissonLoss(LossModel):
    """
    Scaled Poisson negative log-likelihood,
    ``(1/I) sum -Y X + I exp(X)``, for counts ``Y ~ Poisson(I exp(X))``.
    """

    kind = LossKind.POISSON

    def __init__(self, observation, intensity=1.0, k_pr_scale=POISSON_K_PR_SCALE):
        super().__init__(observation)
        obs = self._observation
        if np.any(obs < 0) or np.any(obs != np.round(obs)):
            raise ObservationError("poisson observations must be non-negative integers")
        if not intensity > 0 or not math.isfinite(intensity):
            raise ConfigError(f"intensity must be positive, got {intensity}")
        self.intensity = float(intensity)
        self.k_pr_scale = float(k_pr_scale)

    def _loss(self, x, obs):
        return -obs * x / self.intensity + np.exp(x)

    def _derivative(self, x, obs):
        return np.exp(x) - obs / self.intensity

    def _second(self, x, obs):
        return np.exp(x)

    def _root(self, obs):
        # zero counts are lifted to PROB_CLAMP, a finite stand-in for -inf
        return np.log(np.maximum(obs, PROB_CLAMP) / self.intensity)

    def curvature_bounds(self, zeta):
        if not np.isfinite(zeta):
            raise ConfigError("poisson curvature bounds need a finite zeta")
        return math.exp(-zeta), math.exp(zeta)

    def default_k_pr(self, zeta):
        return self.k_pr_scale * zeta

    def deviance(self, x):
        return 2.0 * self.intensity * self.value(x)

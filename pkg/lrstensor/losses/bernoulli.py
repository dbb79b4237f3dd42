import numpy as np

from ..errors import ConfigError, ObservationError
from .base import LossModel
from .config import LinkFunction, LinkKind, LossKind
from .losses_conf import BERNOULLI_K_PR, BERNOULLI_K_PR_SCALE, PROB_CLAMP


class BernoulliLoss(LossModel):
    """
    Negative log-likelihood of binary observations,
    ``-sum A log p(X) + (1 - A) log(1 - p(X))``.

    Values are evaluated in log space, so no clamping is needed there.
    """

    kind = LossKind.BERNOULLI

    def __init__(self, observation, link=None, k_pr_scale=BERNOULLI_K_PR_SCALE):
        super().__init__(observation)
        if not np.all((self._observation == 0) | (self._observation == 1)):
            raise ObservationError("bernoulli observations must be 0 or 1")
        self.link = link if link is not None else LinkFunction()
        self.k_pr_scale = k_pr_scale

    def _loss(self, x, obs):
        return -(obs * self.link.log_prob(x) + (1.0 - obs) * self.link.log_survival(x))

    def _derivative(self, x, obs):
        return self.link.score(x, obs)

    def _second(self, x, obs):
        return self.link.curvature(x, obs)

    def _root(self, obs):
        return self.link.inverse(obs)

    def quotient_gradient(self, x):
        """``-A p'/p + (1 - A) p'/(1 - p)`` with ``p`` clamped."""
        x = self._check(x)
        p = np.clip(self.link.prob(x), PROB_CLAMP, 1.0 - PROB_CLAMP)
        dp = self.link.dprob(x)
        a = self._observation
        return -a * dp / p + (1.0 - a) * dp / (1.0 - p)

    def curvature_bounds(self, zeta):
        if not np.isfinite(zeta):
            raise ConfigError("bernoulli curvature bounds need a finite zeta")
        z = float(zeta)
        if self.link.kind is LinkKind.LOGISTIC:
            # p(1-p) peaks at 0 and is smallest at |x| = zeta
            low, high = self.link.curvature(z, 1.0), self.link.curvature(0.0, 1.0)
            return float(low), float(high)
        # for a = 1 the curvature decreases in x; a = 0 mirrors it
        return float(self.link.curvature(z, 1.0)), float(self.link.curvature(-z, 1.0))

    def default_k_pr(self, zeta):
        """
        Pruned totals are clipped to ``+-k_pr``, which must reach past the
        largest corrupted logit; ``k_pr`` grows with ``zeta`` and never drops
        below ``BERNOULLI_K_PR``.
        """
        return max(BERNOULLI_K_PR, self.k_pr_scale * float(zeta))

    def deviance(self, x):
        return 2.0 * self.value(x)

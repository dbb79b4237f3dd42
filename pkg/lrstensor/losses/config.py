from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from ..errors import ConfigError
from .losses_conf import HALF_LOG_2PI, PROB_CLAMP


class LossKind(Enum):
    GAUSSIAN = "gaussian"
    BERNOULLI = "bernoulli"
    POISSON = "poisson"


class LinkKind(Enum):
    LOGISTIC = "logistic"
    PROBIT = "probit"


def _mills(z):
    # phi(z) / Phi(z), stable in both tails
    return np.exp(-0.5 * z * z - HALF_LOG_2PI - special.log_ndtr(z))


@dataclass(frozen=True)
class LinkFunction:
    """
    Success probability ``p(x)`` of a binary observation with logit ``x``:
    logistic ``1 / (1 + exp(-x / sigma))`` or probit ``Phi(x / sigma)``.
    """

    kind: LinkKind = LinkKind.LOGISTIC
    sigma: float = 1.0

    def __post_init__(self):
        try:
            kind = LinkKind(self.kind)
        except ValueError as e:
            raise ConfigError(f"unknown link {self.kind!r}") from e
        object.__setattr__(self, "kind", kind)
        if not self.sigma > 0 or not np.isfinite(self.sigma):
            raise ConfigError(f"link sigma must be a positive number, got {self.sigma}")
        object.__setattr__(self, "sigma", float(self.sigma))

    def prob(self, x):
        z = np.asarray(x, dtype=np.float64) / self.sigma
        if self.kind is LinkKind.LOGISTIC:
            return special.expit(z)
        return special.ndtr(z)

    def log_prob(self, x):
        z = np.asarray(x, dtype=np.float64) / self.sigma
        if self.kind is LinkKind.LOGISTIC:
            return -np.logaddexp(0.0, -z)
        return special.log_ndtr(z)

    def log_survival(self, x):
        """``log(1 - p(x))``."""
        return self.log_prob(-np.asarray(x, dtype=np.float64))

    def dprob(self, x):
        z = np.asarray(x, dtype=np.float64) / self.sigma
        if self.kind is LinkKind.LOGISTIC:
            p = special.expit(z)
            return p * (1.0 - p) / self.sigma
        return np.exp(-0.5 * z * z - HALF_LOG_2PI) / self.sigma

    def inverse(self, p):
        p = np.clip(np.asarray(p, dtype=np.float64), PROB_CLAMP, 1.0 - PROB_CLAMP)
        if self.kind is LinkKind.LOGISTIC:
            return self.sigma * special.logit(p)
        return self.sigma * special.ndtri(p)

    def score(self, x, a):
        """
        Derivative of ``-a log p(x) - (1 - a) log(1 - p(x))`` in ``x``.
        """
        z = np.asarray(x, dtype=np.float64) / self.sigma
        if self.kind is LinkKind.LOGISTIC:
            return (special.expit(z) - a) / self.sigma
        return (-a * _mills(z) + (1.0 - a) * _mills(-z)) / self.sigma

    def curvature(self, x, a):
        """Second derivative of the same negative log-likelihood."""
        z = np.asarray(x, dtype=np.float64) / self.sigma
        if self.kind is LinkKind.LOGISTIC:
            p = special.expit(z)
            return p * (1.0 - p) / self.sigma**2
        up, down = _mills(z), _mills(-z)
        return (a * up * (z + up) + (1.0 - a) * down * (down - z)) / self.sigma**2

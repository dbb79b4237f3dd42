from ..errors import ConfigError
from .bernoulli import BernoulliLoss
from .config import LinkFunction, LossKind
from .gaussian import GaussianLoss
from .poisson import PoissonLoss


def build_loss(kind, observation, link=None, intensity=1.0):
    """Construct the loss of ``kind`` over ``observation``."""
    try:
        kind = LossKind(kind)
    except ValueError as e:
        raise ConfigError(f"unknown model {kind!r}") from e
    if kind is LossKind.GAUSSIAN:
        return GaussianLoss(observation)
    if kind is LossKind.BERNOULLI:
        return BernoulliLoss(observation, link or LinkFunction())
    return PoissonLoss(observation, intensity)

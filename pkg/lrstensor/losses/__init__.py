from .base import LossModel, entry_gradient, entry_prune, gradient, loss_value
from .bernoulli import BernoulliLoss
from .config import LinkFunction, LinkKind, LossKind
from .gaussian import GaussianLoss
from .poisson import PoissonLoss
from .registry import build_loss

__all__ = [
    "BernoulliLoss",
    "GaussianLoss",
    "LinkFunction",
    "LinkKind",
    "LossKind",
    "LossModel",
    "PoissonLoss",
    "build_loss",
    "entry_gradient",
    "entry_prune",
    "gradient",
    "loss_value",
]

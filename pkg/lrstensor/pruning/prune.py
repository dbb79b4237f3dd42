import numpy as np

from ..core import SparseTensor, as_dense
from ..errors import ConfigError
from .active import level_alpha_active_indices


def gradient_prune(t_hat, model, alpha_eff, k_pr):
    """
    Sparse estimate from the gradient at ``t_hat``: on the level-``alpha_eff``
    active indices each entry solves the one-dimensional prune problem of the
    model, elsewhere it is zero. Explicit zeros are dropped.
    """
    if not k_pr > 0:
        raise ConfigError(f"k_pr must be positive, got {k_pr}")
    t_hat = as_dense(t_hat, "low-rank iterate")
    active = level_alpha_active_indices(model.gradient(t_hat), alpha_eff)
    if not active.size:
        return SparseTensor.empty(t_hat.shape)
    values = model.prune_values(t_hat, active.mask, k_pr)
    return SparseTensor.from_mask(active.mask, values).nonzero()


def hard_threshold_support(s_hat, delta_star):
    if not delta_star >= 0:
        raise ConfigError(f"delta_star must be >= 0, got {delta_star}")
    keep = np.abs(s_hat.values) > delta_star
    return SparseTensor(s_hat.shape, s_hat.indices[keep], s_hat.values[keep])

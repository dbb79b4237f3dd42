from ..core import (
    TuckerTensor,
    as_dense,
    check_rank,
    hosvd,
    matricize,
    multi_mode_product,
    truncated_svd,
)
from ..errors import ConfigError


def hooi(y, rank, t_max):
    """
    Higher-order orthogonal iteration from the HOSVD start.

    Each sweep refreshes the factors mode by mode against the latest factors
    of all other modes.
    """
    if int(t_max) != t_max or t_max < 1:
        raise ConfigError(f"t_max must be a positive integer, got {t_max}")
    y = as_dense(y)
    rank = check_rank(y.shape, rank)
    if not y.any():
        return hosvd(y, rank)
    factors = list(hosvd(y, rank).factors)
    for _ in range(int(t_max)):
        for mode, r in enumerate(rank):
            partial = multi_mode_product(y, factors, skip=mode, transpose=True)
            factors[mode] = truncated_svd(matricize(partial, mode), r)[0]
    core = multi_mode_product(y, factors, transpose=True)
    return TuckerTensor(core, tuple(factors))

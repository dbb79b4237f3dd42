import logging
from dataclasses import replace

from ..init import InitConfig, initialize
from ..utils import default_mu1
from .iterations import rgrad_sparse
from .solver_conf import ESCALATE_GAMMA, ESCALATE_MU1, MAX_RETRIES

logger = logging.getLogger(__name__)


def fit_with_escalation(
    model, config, init_config=None, truth=None, max_retries=MAX_RETRIES
):
    """
    Initialize and run :func:`rgrad_sparse`; while the fit neither converges
    nor makes progress (see :meth:`FitResult.needs_retry`), double
    ``mu1`` and grow ``gamma`` by 1.5 (capped so ``gamma * alpha <= 1``) and
    retry, at most ``max_retries`` times.

    Returns the last fit and the number of retries used.
    """
    init_config = init_config or InitConfig()
    mu1 = config.mu1 or init_config.mu1 or default_mu1(model.shape)
    gamma = config.gamma
    for attempt in range(max_retries + 1):
        run_config = replace(config, mu1=mu1, gamma=gamma)
        start = initialize(model, config.rank, replace(init_config, mu1=mu1))
        fit = rgrad_sparse(model, start, run_config, truth=truth)
        if not fit.needs_retry() or attempt == max_retries:
            return fit, attempt
        mu1 *= ESCALATE_MU1
        gamma *= ESCALATE_GAMMA
        if config.alpha > 0:
            gamma = min(gamma, 1.0 / config.alpha)
        logger.warning(
            "fit did not converge, retry %d with mu1=%.4g gamma=%.4g",
            attempt + 1,
            mu1,
            gamma,
        )
    return fit, max_retries

"""Warm starts for the three observation models."""

import logging
import math

import numpy as np

from ..core import TuckerTensor, as_dense, check_rank, hosvd
from ..errors import ConfigError, ObservationError
from ..losses import BernoulliLoss, LinkFunction, LossKind
from ..manifold import trim, trunc
from ..utils import default_mu1, kth_largest, log_dbar, warn
from .config import InitConfig
from .frank_wolfe import frank_wolfe_nuclear
from .hooi import hooi
from .init_conf import (
    DEFAULT_FW_ITERS,
    DEFAULT_T_MAX,
    POISSON_SHIFT,
    TRIM_SCALE,
    TRUNC_SCALE,
)

logger = logging.getLogger(__name__)


def _final_trim(t, rank, mu1):
    """Trim at ``eta = 16 mu1 |T|_F / (7 sqrt(d*))``."""
    if isinstance(t, TuckerTensor):
        norm, d_star = t.norm(), math.prod(t.shape)
    else:
        norm, d_star = float(np.linalg.norm(t)), t.size
    eta = TRIM_SCALE * mu1 * norm / math.sqrt(d_star)
    logger.debug("final trim at eta=%.6e", eta)
    if eta == 0.0:
        return hosvd(np.zeros(t.shape), rank)
    return trim(t, eta, rank)


def init_rpca(a, rank, mu1=None, t_max=DEFAULT_T_MAX):
    """
    Start for the gaussian model: zero the largest ``floor(p d*)`` entries to
    size the truncation level, truncate the observation, run HOOI and trim.
    """
    a = as_dense(a, "observation")
    rank = check_rank(a.shape, rank)
    mu1 = mu1 if mu1 is not None else default_mu1(a.shape)
    m, d_star = a.ndim, a.size
    log_d = log_dbar(a.shape)
    p = 1.0 / (8.0 * mu1**2)
    if log_d > 0:
        p = min(p, 1.0 / (64.0 * m * log_d))
    k = int(math.floor(p * d_star))
    magnitude = np.abs(a)
    if k == 0:
        warn(f"floor(p d*) = 0 for p={p:.3e}; outlier screening skipped")
        tau0 = float(magnitude.max())
    else:
        tau0 = kth_largest(magnitude, k)
    screened = np.where(magnitude > tau0, 0.0, a)
    tau = (
        TRUNC_SCALE
        * math.sqrt(m * log_d)
        * mu1
        * float(np.linalg.norm(screened))
        / math.sqrt(d_star)
    )
    logger.debug("rpca init: p=%.3e tau0=%.6e tau=%.6e", p, tau0, tau)
    if tau == 0.0:
        return hosvd(np.zeros(a.shape), rank)
    return _final_trim(hooi(trunc(a, tau), rank, t_max), rank, mu1)


def init_binary(a, link, rank, zeta=None, fw_iters=DEFAULT_FW_ITERS, mu1=None):
    """
    Start for the bernoulli model: reshape to a ``(d_1...d_m0) x (rest)``
    matrix with ``m0 = floor(m/2)``, fit the nuclear-norm and sup-norm
    constrained likelihood by Frank-Wolfe, fold back and trim.
    """
    a = as_dense(a, "observation")
    if not np.all((a == 0) | (a == 1)):
        raise ObservationError("binary initialization needs 0/1 observations")
    rank = check_rank(a.shape, rank)
    link = link if link is not None else LinkFunction()
    zeta = zeta if zeta is not None else link.sigma
    mu1 = mu1 if mu1 is not None else default_mu1(a.shape)
    m0 = a.ndim // 2
    rows = math.prod(a.shape[:m0])
    matrix = a.reshape(rows, -1)
    r = min(math.prod(rank[:m0]), math.prod(rank[m0:]))
    radius = zeta * math.sqrt(a.size * r)
    estimate, history = frank_wolfe_nuclear(
        BernoulliLoss(matrix, link), radius, zeta, fw_iters
    )
    logger.debug(
        "binary init: radius=%.6e objective %.6e -> %.6e",
        radius,
        history[0],
        history[-1],
    )
    return _final_trim(estimate.reshape(a.shape), rank, mu1)


def init_poisson(y, intensity, rank, mu1=None):
    """Start for the poisson model: HOSVD of ``log((Y + 1/2) / I)``, trimmed."""
    y = as_dense(y, "counts")
    if not intensity > 0:
        raise ConfigError(f"intensity must be positive, got {intensity}")
    if np.any(y < 0):
        raise ObservationError("poisson counts must be non-negative")
    rank = check_rank(y.shape, rank)
    mu1 = mu1 if mu1 is not None else default_mu1(y.shape)
    log_rate = np.log((y + POISSON_SHIFT) / intensity)
    return _final_trim(hosvd(log_rate, rank), rank, mu1)


def initialize(model, rank, config=None):
    """Default warm start for ``model``."""
    config = config or InitConfig()
    rank = check_rank(model.shape, rank if rank is not None else config.rank)
    if model.kind is LossKind.GAUSSIAN:
        return init_rpca(model.observation, rank, config.mu1, config.t_max)
    if model.kind is LossKind.BERNOULLI:
        return init_binary(
            model.observation,
            model.link,
            rank,
            config.zeta,
            config.fw_iters,
            config.mu1,
        )
    return init_poisson(model.observation, model.intensity, rank, config.mu1)

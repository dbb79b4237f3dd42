import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from ..core import check_rank
from ..errors import LRSTError
from ..init import initialize
from ..utils import warn
from .iterations import rgrad_sparse
from .models import BicCell, BicScan

logger = logging.getLogger(__name__)


def bic_terms(model, fit):
    """
    ``(penalty, deviance)`` with penalty ``(|S|_0 + sum r_i d_i) ln d*`` and
    the model deviance at ``T + S``.
    """
    rank = fit.t_hat.ranks
    d_star = math.prod(model.shape)
    dof = fit.s_hat.nnz + sum(r * d for r, d in zip(rank, model.shape))
    fitted = fit.t_hat.to_dense() + fit.s_hat.to_dense()
    return dof * math.log(d_star), model.deviance(fitted)


def bic_score(model, fit):
    penalty, deviance = bic_terms(model, fit)
    if deviance == -math.inf:
        warn("zero residual: BIC is -inf")
    return penalty + deviance


def _scan_cell(model, rank, alpha, config, init_config):
    cell_config = replace(config, rank=rank, alpha=alpha, gamma=1.0)
    try:
        start = initialize(model, rank, init_config)
        fit = rgrad_sparse(model, start, cell_config)
        if fit.diagnostic:
            return BicCell(rank, alpha, math.nan, False, fit.diagnostic)
        return BicCell(rank, alpha, bic_score(model, fit), fit.converged)
    except (LRSTError, ArithmeticError, np.linalg.LinAlgError) as e:
        logger.warning("bic cell rank=%s alpha=%s failed: %s", rank, alpha, e)
        return BicCell(rank, alpha, math.nan, False, str(e))


def bic_scan(model, rank_grid, alpha_grid, config, init_config=None, threads=1):
    """
    Fit every ``(rank, alpha)`` cell with ``gamma = 1`` and score it.

    Cells run on ``threads`` workers and come back in grid order (ranks outer,
    alphas inner). A failing cell is recorded, not raised.
    """
    ranks = [check_rank(model.shape, r) for r in rank_grid]
    alphas = [float(a) for a in alpha_grid]
    if not ranks or not alphas:
        raise ValueError("bic_scan needs non-empty rank and alpha grids")
    grid = [(r, a) for r in ranks for a in alphas]
    with ThreadPoolExecutor(max_workers=max(int(threads), 1)) as pool:
        cells = list(
            pool.map(
                lambda cell: _scan_cell(model, cell[0], cell[1], config, init_config),
                grid,
            )
        )
    return BicScan(cells)

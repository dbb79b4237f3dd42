import logging

import numpy as np
import scipy.linalg

from ..core import truncated_svd
from ..manifold import entrywise_truncate

logger = logging.getLogger(__name__)


def nuclear_norm(x):
    return float(np.sum(scipy.linalg.svdvals(x, check_finite=False)))


def linear_oracle(grad, radius):
    """Minimizer of ``<grad, S>`` over the nuclear-norm ball: ``-radius u v'``."""
    u, _, vt = truncated_svd(grad, 1)
    return -radius * np.outer(u[:, 0], vt[0])


def frank_wolfe_nuclear(loss, radius, zeta, max_iter):
    """
    Approximately minimize ``loss`` over ``|X|_* <= radius``, ``|X|_inf <= zeta``.

    Frank-Wolfe steps of size ``2 / (k + 2)`` toward the rank-one vertex are
    followed by clipping to ``[-zeta, zeta]`` and, when clipping pushed the
    iterate out of the ball, a rescale back onto it. A step is kept only when
    it does not increase the objective.

    Returns the final matrix and the objective after every iteration.
    """
    x = np.zeros(loss.shape)
    value = loss.value(x)
    history = [value]
    for k in range(int(max_iter)):
        step = 2.0 / (k + 2.0)
        vertex = linear_oracle(loss.gradient(x), radius)
        candidate = entrywise_truncate(x + step * (vertex - x), zeta)
        norm = nuclear_norm(candidate)
        if norm > radius:
            candidate *= radius / norm
        candidate_value = loss.value(candidate)
        if candidate_value <= value:
            x, value = candidate, candidate_value
        history.append(value)
    logger.debug(
        "frank-wolfe: %d iterations, objective %.6e -> %.6e",
        max_iter,
        history[0],
        history[-1],
    )
    return x, history

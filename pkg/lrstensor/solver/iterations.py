"""Riemannian gradient descent (with and without gradient pruning) and the
projected-gradient baseline.

All three share one driver: an iteration produces the next low-rank point from
the current one, the sparse part is re-estimated by ``prune`` and a trace row
is recorded. Numerical breakdowns end the run with
``Termination.NUMERICAL_FAILURE`` instead of raising.
"""

import logging
import math
import time

import numpy as np

from ..core import SparseTensor, as_dense, hosvd
from ..errors import NonFiniteError, RankDeficientError, RankError, ShapeMismatchError
from ..manifold import NO_TRIM, tangent_project, trim
from ..pruning import gradient_prune
from .config import Termination
from .models import FitResult, IterationRecord, SolverTrace
from .solver_conf import TRIM_SCALE

logger = logging.getLogger(__name__)


class _Recorder:
    def __init__(self, model, truth, trace):
        self.model = model
        self.trace = trace
        self.truth_t = self.truth_norm = self.truth_s = None
        if truth is not None:
            truth_t, truth_s = truth
            self.truth_t = as_dense(truth_t, "true low-rank tensor")
            self.truth_norm = float(np.linalg.norm(self.truth_t)) or 1.0
            self.truth_s = (
                truth_s.to_dense() if truth_s is not None else np.zeros(model.shape)
            )

    def record(self, iteration, dense_t, s, rel_change, zeta, step_ms=None):
        s_dense = s.to_dense()
        loss = self.model.value(dense_t + s_dense)
        rel_err_t = err_s = None
        if self.truth_t is not None:
            rel_err_t = float(np.linalg.norm(dense_t - self.truth_t)) / self.truth_norm
            err_s = float(np.linalg.norm(s_dense - self.truth_s))
        record = IterationRecord(
            iteration, loss, rel_change, zeta, s.nnz, rel_err_t, err_s, step_ms
        )
        self.trace.append(record)
        logger.debug(
            "iter %d loss=%.6e rel_change=%s supp=%d",
            iteration,
            loss,
            "-" if rel_change is None else f"{rel_change:.3e}",
            s.nnz,
        )
        return record


def _check_start(model, init, cfg):
    if init.shape != model.shape:
        raise ShapeMismatchError(
            f"start of shape {init.shape} for observations of shape {model.shape}"
        )
    if init.ranks != cfg.rank:
        raise RankError(f"start has ranks {init.ranks}, solver expects {cfg.rank}")


def _drive(model, init, config, step, prune, truth, callback):
    cfg = config.resolved(model, init)
    _check_start(model, init, cfg)
    trace = SolverTrace(has_truth=truth is not None)
    trace.warnings.extend(cfg.step_size_warnings(model))
    recorder = _Recorder(model, truth, trace)

    t = init
    dense_t = t.to_dense()
    s = SparseTensor.empty(model.shape)

    def finish(termination, diagnostic=None):
        if diagnostic:
            logger.warning("fit stopped: %s", diagnostic)
            trace.warnings.append(diagnostic)
        return FitResult(t, s, trace, termination, cfg, diagnostic)

    try:
        s = prune(dense_t, cfg)
        recorder.record(0, dense_t, s, None, None)
    except (NonFiniteError, RankDeficientError) as e:
        return finish(Termination.NUMERICAL_FAILURE, str(e))
    if callback is not None:
        callback(0, t, s)

    for iteration in range(1, cfg.l_max + 1):
        start = time.perf_counter()
        try:
            t_next, zeta = step(t, dense_t, s, cfg)
            dense_next = t_next.to_dense()
            s_next = prune(dense_next, cfg)
        except (NonFiniteError, RankDeficientError) as e:
            return finish(Termination.NUMERICAL_FAILURE, str(e))
        step_ms = 1000.0 * (time.perf_counter() - start)
        norm = float(np.linalg.norm(dense_next))
        if norm == 0.0:
            return finish(
                Termination.NUMERICAL_FAILURE,
                f"iterate collapsed to zero at iteration {iteration}",
            )
        rel_change = float(np.linalg.norm(dense_next - dense_t)) / norm
        t, dense_t, s = t_next, dense_next, s_next
        try:
            recorder.record(iteration, dense_t, s, rel_change, zeta, step_ms)
        except NonFiniteError as e:
            return finish(Termination.NUMERICAL_FAILURE, str(e))
        if callback is not None:
            callback(iteration, t, s)
        if rel_change < cfg.rel_tol:
            return finish(Termination.TOLERANCE)
    return finish(Termination.MAX_ITER)


def _no_sparse(model):
    def prune(dense_t, cfg):
        return SparseTensor.empty(model.shape)

    return prune


def rgrad_sparse(model, init, config, truth=None, callback=None):
    """
    Riemannian gradient descent with gradient pruning.

    Each iteration steps from ``T`` along the tangent projection of the gradient
    at ``T + S``, trims at ``zeta = (16/7) mu1 |W|_F / sqrt(d*)`` and
    re-estimates ``S`` from the gradient at the new low-rank point alone.
    """
    d_star = math.prod(model.shape)

    def step(t, dense_t, s, cfg):
        grad = model.gradient(dense_t + s.to_dense())
        w = tangent_project(t, grad).combine(1.0, -cfg.beta)
        zeta = TRIM_SCALE * cfg.mu1 * w.norm() / math.sqrt(d_star)
        return trim(w, zeta, cfg.rank), zeta

    def prune(dense_t, cfg):
        return gradient_prune(dense_t, model, cfg.alpha_eff, cfg.k_pr)

    return _drive(model, init, config, step, prune, truth, callback)


def rgrad_lowrank(model, init, config, truth=None, callback=None):
    """Riemannian gradient descent for an exactly low-rank target, no trimming."""

    def step(t, dense_t, s, cfg):
        w = tangent_project(t, model.gradient(dense_t)).combine(1.0, -cfg.beta)
        return trim(w, NO_TRIM, cfg.rank), NO_TRIM

    return _drive(model, init, config, step, _no_sparse(model), truth, callback)


def pgd_lowrank(model, init, config, truth=None, callback=None):
    """Projected gradient descent: full gradient step, then HOSVD."""

    def step(t, dense_t, s, cfg):
        return hosvd(dense_t - cfg.beta * model.gradient(dense_t), cfg.rank), NO_TRIM

    return _drive(model, init, config, step, _no_sparse(model), truth, callback)

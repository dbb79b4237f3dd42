"""Experiment drivers behind the ``lrst`` subcommands.

Every runner takes an :class:`ExperimentSpec`, writes its artifacts atomically
into one output directory and stamps them with the spec digest.
"""

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .. import __version__
from ..core import load_lrst, save_lrst, save_sparse_csv
from ..errors import ConfigError
from ..init import initialize
from ..losses import build_loss
from ..pruning import hard_threshold_support
from ..solver import SOLVERS, SolverKind, bic_scan, fit_with_escalation
from ..synth import Instance, generate_instance
from ..utils import atomic_write_text, canonical_yaml, format_float, prepare_output_dir
from .experiment_conf import (
    BIC_FILE,
    BIC_SUMMARY_FILE,
    COMPARE_COLUMNS,
    COMPARE_FILE,
    COMPARE_SUMMARY_FILE,
    S_HAT_FILE,
    SUMMARY_FILE,
    T_HAT_FILE,
    TRACE_FILE,
)
from .models import BicOutcome, CompareRun, FitOutcome

logger = logging.getLogger(__name__)


def load_source(path):
    """An instance directory, or a bare observation file without truth."""
    path = Path(path)
    if path.is_dir():
        return Instance.load(path)
    return Instance(load_lrst(path))


def build_model(spec, instance):
    recorded = instance.meta.get("model")
    if recorded is not None and recorded != spec.model.value:
        raise ConfigError(
            f"instance was generated for the {recorded} model, spec says "
            f"{spec.model.value}"
        )
    return build_loss(
        spec.model, instance.observation, spec.link_function(), spec.intensity
    )


def run_synth(spec, seed, out, force=False):
    instance = generate_instance(spec.instance_config(), seed)
    instance.meta["spec_digest"] = spec.digest()
    directory = instance.save(out, force)
    logger.info("instance written to %s", directory)
    return instance


def fit_instance(spec, model, instance, config=None):
    """
    Warm start and run the spec's solver; ``escalate: true`` switches to the
    retrying pruned solver. Returns ``(fit, retries)``.
    """
    config = config or spec.solver_config()
    init_config = spec.init_config()
    if spec.escalate:
        if spec.solver is not SolverKind.RGRAD_SPARSE:
            raise ConfigError("escalate needs solver: rgrad_sparse")
        return fit_with_escalation(model, config, init_config, truth=instance.truth)
    start = initialize(model, config.rank, init_config)
    return SOLVERS[spec.solver](model, start, config, truth=instance.truth), 0


def _fit_summary(spec, instance, fit, s_hat, retries):
    cfg = fit.config
    last = fit.trace.records[-1] if fit.trace.records else None
    summary = {
        "lrstensor_version": __version__,
        "spec_digest": spec.digest(),
        "observation_sha256": instance.observation_digest(),
        "model": spec.model.value,
        "solver": spec.solver.value,
        "rank": [int(r) for r in cfg.rank],
        "alpha": float(cfg.alpha),
        "alpha_eff": float(cfg.alpha_eff),
        "gamma": float(cfg.gamma),
        "beta": float(cfg.beta),
        "mu1": float(cfg.mu1),
        "k_pr": float(cfg.k_pr),
        "zeta": float(cfg.zeta),
        "l_max": int(cfg.l_max),
        "rel_tol": float(cfg.rel_tol),
        "terminated_by": fit.terminated_by.value,
        "exit_code": fit.terminated_by.exit_code,
        "iterations": fit.iterations,
        "retries": int(retries),
        "support_size": int(s_hat.nnz),
        "final_loss": None if last is None else float(last.loss),
        "diagnostic": fit.diagnostic,
        "warnings": list(fit.trace.warnings),
    }
    if spec.delta_star is not None:
        summary["delta_star"] = float(spec.delta_star)
    if fit.trace.has_truth and last is not None:
        summary["final_rel_err_t"] = float(last.rel_err_t)
        summary["final_err_s"] = float(last.err_s)
    return summary


def run_fit(spec, source, out, force=False):
    """
    Fit the observations at ``source`` and write ``t_hat.lrst``, ``s_hat.csv``,
    ``trace.csv`` and ``summary.yaml``.
    """
    directory = prepare_output_dir(out, force)
    instance = load_source(source)
    model = build_model(spec, instance)
    fit, retries = fit_instance(spec, model, instance)
    s_hat = fit.s_hat
    if spec.delta_star is not None:
        s_hat = hard_threshold_support(s_hat, spec.delta_star)
    save_lrst(directory / T_HAT_FILE, fit.t_hat.to_dense())
    save_sparse_csv(directory / S_HAT_FILE, s_hat)
    fit.trace.save_csv(directory / TRACE_FILE)
    summary = _fit_summary(spec, instance, fit, s_hat, retries)
    atomic_write_text(directory / SUMMARY_FILE, canonical_yaml(summary))
    logger.info(
        "fit %s after %d iterations", fit.terminated_by.value, fit.iterations
    )
    return FitOutcome(fit, s_hat, retries, directory)


def run_bic(spec, source, rank_grid, alpha_grid, out, force=False, threads=1):
    directory = prepare_output_dir(out, force)
    instance = load_source(source)
    model = build_model(spec, instance)
    config = spec.solver_config(rank=rank_grid[0])
    scan = bic_scan(
        model, rank_grid, alpha_grid, config, spec.init_config(), threads=threads
    )
    atomic_write_text(directory / BIC_FILE, scan.to_csv())
    best = scan.best
    summary = {
        "lrstensor_version": __version__,
        "spec_digest": spec.digest(),
        "observation_sha256": instance.observation_digest(),
        "cells": len(scan.cells),
        "failed": sum(cell.failed for cell in scan.cells),
        "best_rank": None if best is None else [int(r) for r in best.rank],
        "best_alpha": None if best is None else float(best.alpha),
        "best_bic": None if best is None else float(best.bic),
    }
    atomic_write_text(directory / BIC_SUMMARY_FILE, canonical_yaml(summary))
    return BicOutcome(scan, directory)


def compare_seed(spec, seed):
    """
    One generated instance, one warm start, every solver run from it.
    """
    instance = generate_instance(spec.instance_config(), seed)
    model = build_model(spec, instance)
    config = spec.solver_config()
    start = initialize(model, config.rank, spec.init_config())
    fits = {
        kind.value: solve(model, start, config, truth=instance.truth)
        for kind, solve in SOLVERS.items()
    }
    return CompareRun(int(seed), instance.observation_digest(), fits)


def _compare_csv(run):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COMPARE_COLUMNS)
    for name, iteration, rel_err, step_ms in run.rows():
        writer.writerow(
            [name, iteration, format_float(rel_err), format_float(step_ms)]
        )
    return buffer.getvalue()


def _compare_entry(run):
    solvers = {}
    for name, fit in run.fits.items():
        times = fit.trace.step_times
        last = fit.trace.records[-1] if fit.trace.records else None
        solvers[name] = {
            "terminated_by": fit.terminated_by.value,
            "iterations": fit.iterations,
            "final_rel_err_t": None if last is None else float(last.rel_err_t),
            "mean_step_ms": float(np.mean(times)) if times else None,
        }
    return {"observation_sha256": run.observation_sha256, "solvers": solvers}


def run_compare(spec, seeds, out, force=False, threads=1):
    """
    Per seed, write ``compare_seed{seed}.csv`` with the error and step time
    of every solver, plus a ``compare.yaml`` overview.
    """
    directory = prepare_output_dir(out, force)
    seeds = [int(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=max(int(threads), 1)) as pool:
        runs = list(pool.map(lambda seed: compare_seed(spec, seed), seeds))
    for run in runs:
        path = directory / COMPARE_FILE.format(seed=run.seed)
        atomic_write_text(path, _compare_csv(run))
    summary = {
        "lrstensor_version": __version__,
        "spec_digest": spec.digest(),
        "seeds": {run.seed: _compare_entry(run) for run in runs},
    }
    atomic_write_text(directory / COMPARE_SUMMARY_FILE, canonical_yaml(summary))
    return runs

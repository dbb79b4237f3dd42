"""Seeded generators of low-rank truths, sparse corruptions, noise and
observations.

Every generator takes ``seed`` (an int or a ``numpy.random.SeedSequence``)
and draws from a PCG64 stream, so identical seeds give identical tensors.
"""

import numpy as np

from ..core import (
    SparseTensor,
    TuckerTensor,
    as_dense,
    check_rank,
    check_shape,
    hosvd,
    matricize,
    spikiness,
    tensorize,
)
from ..errors import ConfigError, InfeasibleSpectrumError
from ..manifold import trunc
from ..utils import default_mu1, warn
from .config import NoiseKind, SparseLaw
from .synth_conf import (
    FLAT_RTOL,
    FLATTEN_SWEEPS,
    GEN_CLIP,
    MAX_POISSON_MEAN,
    SPECTRUM_RTOL,
    SPECTRUM_SWEEPS,
    SPIKINESS_SLACK,
)


def rng_from(seed):
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed, n):
    """``n`` independent child seeds of ``seed``."""
    return np.random.SeedSequence(seed).spawn(n)


def _superdiagonal(rank, values):
    core = np.zeros(rank)
    for i, v in enumerate(values):
        core[(i,) * len(rank)] = v
    return core


def _pin_extremes(core, lambda_min, lambda_max):
    for _ in range(SPECTRUM_SWEEPS):
        for mode in range(core.ndim):
            u, s, vt = np.linalg.svd(matricize(core, mode), full_matrices=False)
            s = np.clip(s, lambda_min, lambda_max)
            s[0], s[-1] = lambda_max, lambda_min
            core = tensorize((u * s) @ vt, core.shape, mode)
        spectra = [
            np.linalg.svd(matricize(core, mode), compute_uv=False)
            for mode in range(core.ndim)
        ]
        if all(
            abs(s[0] - lambda_max) <= SPECTRUM_RTOL * lambda_max
            and abs(s[-1] - lambda_min) <= SPECTRUM_RTOL * lambda_min
            for s in spectra
        ):
            return core
    warn(
        f"spectrum targets ({lambda_min}, {lambda_max}) not reached within "
        f"{SPECTRUM_SWEEPS} sweeps"
    )
    return core


def _flatten_factor(u):
    """
    Rescale the rows of an orthonormal factor towards the common norm
    ``sqrt(r / d)`` and take the polar factor again, until the largest row
    norm is within ``FLAT_RTOL`` of it.
    """
    d, r = u.shape
    target = np.sqrt(r / d)
    for _ in range(FLATTEN_SWEEPS):
        norms = np.linalg.norm(u, axis=1)
        if norms.max() <= FLAT_RTOL * target:
            break
        u = u * (target / np.maximum(norms, 1e-6 * target))[:, None]
        left, _, right = np.linalg.svd(u, full_matrices=False)
        u = left @ right
    return u


def _cap_spikiness(tk, bound):
    # the core is kept, so the mode spectra do not move
    if not np.any(tk.core) or spikiness(tk.to_dense()) <= bound:
        return tk
    tk = TuckerTensor(tk.core, tuple(_flatten_factor(u) for u in tk.factors))
    level = spikiness(tk.to_dense())
    if level > bound:
        warn(f"truth spikiness {level:.4g} stays above {bound:.4g}")
    return tk


def gen_lowrank_tucker(
    dims, rank, seed, lambda_min=None, lambda_max=None, linf=None, max_spikiness=None
):
    """
    Low-rank truth from the HOSVD of a clipped standard normal tensor.

    With both ``lambda_min`` and ``lambda_max`` the core is rebuilt so every
    mode spectrum runs from ``lambda_max`` down to ``lambda_min`` (a
    superdiagonal core with evenly spaced values when the ranks agree). A lone
    ``lambda_max`` or ``linf`` target rescales the whole tensor.

    A draw whose spikiness exceeds ``max_spikiness`` (by default
    ``SPIKINESS_SLACK`` times the default ``mu1`` of ``dims``) gets flattened
    factors, which bounds its spikiness by ``prod(sqrt(r_j))`` up to
    ``FLAT_RTOL``. Draws already below the bound are returned unchanged.
    """
    dims = check_shape(dims)
    rank = check_rank(dims, rank)
    if linf is not None and (lambda_min is not None or lambda_max is not None):
        raise ConfigError("give either an l-infinity target or spectrum targets")
    raw = np.clip(rng_from(seed).standard_normal(dims), -GEN_CLIP, GEN_CLIP)
    tk = hosvd(raw, rank)
    core = tk.core
    if lambda_min is not None:
        if lambda_max is None:
            raise InfeasibleSpectrumError("lambda_min needs lambda_max")
        if not 0 < lambda_min <= lambda_max:
            raise InfeasibleSpectrumError(
                f"need 0 < lambda_min <= lambda_max, got ({lambda_min}, {lambda_max})"
            )
        for mode, r in enumerate(rank):
            others = int(np.prod(rank)) // r
            if r > others:
                raise InfeasibleSpectrumError(
                    f"rank {rank} cannot carry a full spectrum in mode {mode}"
                )
            if r == 1 and lambda_min != lambda_max:
                raise InfeasibleSpectrumError(
                    "a rank-one mode has a single singular value; "
                    "lambda_min must equal lambda_max"
                )
        if len(set(rank)) == 1:
            core = _superdiagonal(rank, np.linspace(lambda_max, lambda_min, rank[0]))
        else:
            core = _pin_extremes(core, lambda_min, lambda_max)
    elif lambda_max is not None:
        top = max(
            np.linalg.norm(matricize(core, mode), 2) for mode in range(core.ndim)
        )
        core = core * (lambda_max / top)
    tk = TuckerTensor(core, tk.factors)
    if max_spikiness is None:
        max_spikiness = SPIKINESS_SLACK * default_mu1(dims)
    if not max_spikiness >= 1.0:
        raise ConfigError(f"max_spikiness must be >= 1, got {max_spikiness}")
    tk = _cap_spikiness(tk, max_spikiness)
    if linf is not None:
        if not linf > 0:
            raise InfeasibleSpectrumError(f"linf target must be positive, got {linf}")
        tk = TuckerTensor(tk.core * (linf / np.abs(tk.to_dense()).max()), tk.factors)
    return tk


def gen_lowrank(
    dims, rank, seed, lambda_min=None, lambda_max=None, linf=None, max_spikiness=None
):
    return gen_lowrank_tucker(
        dims, rank, seed, lambda_min, lambda_max, linf, max_spikiness
    ).to_dense()


def gen_sparse(dims, alpha, amp, seed, law=SparseLaw.GAUSSIAN, linf=None):
    """
    Each entry is nonzero with probability ``alpha``; values are
    ``amp * N(0, 1)`` or the constant ``amp``. ``linf`` rescales the values to
    that sup norm. The realized slice sparsity is ``slice_sparsity()``.
    """
    dims = check_shape(dims)
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")
    law = SparseLaw(law)
    rng = rng_from(seed)
    mask = rng.random(dims) < alpha
    nnz = int(np.count_nonzero(mask))
    if law is SparseLaw.GAUSSIAN:
        values = amp * rng.standard_normal(nnz)
    else:
        values = np.full(nnz, float(amp))
    if linf is not None and nnz:
        top = np.abs(values).max()
        if top > 0:
            values = values * (linf / top)
    return SparseTensor.from_mask(mask, values).nonzero()


def noise_tensor(shape, law, seed):
    rng = rng_from(seed)
    if law.kind is NoiseKind.GAUSSIAN:
        return law.sigma * rng.standard_normal(shape)
    return law.scale * rng.standard_t(law.df, size=shape)


def add_noise(t, law, seed):
    t = as_dense(t)
    if law.is_zero:
        return t.copy()
    return t + noise_tensor(t.shape, law, seed)


def split_heavy_tail(z, level):
    """
    ``z = S + Z~`` with ``Z~`` the truncation of ``z`` at ``level`` and ``S``
    nonzero exactly where ``|z| > level``.
    """
    z = as_dense(z, "noise")
    bounded = trunc(z, level)
    return SparseTensor.from_dense(z - bounded), bounded


def sample_bernoulli(logits, link, seed):
    logits = as_dense(logits, "logits")
    draws = rng_from(seed).random(logits.shape)
    return (draws < link.prob(logits)).astype(np.float64)


def sample_poisson(t, intensity, seed):
    t = as_dense(t)
    if not intensity > 0:
        raise ConfigError(f"intensity must be positive, got {intensity}")
    mean = intensity * np.exp(t)
    if not np.all(mean <= MAX_POISSON_MEAN):
        raise ConfigError(
            f"poisson mean {float(np.max(mean)):.3e} exceeds {MAX_POISSON_MEAN:.0e}"
        )
    return rng_from(seed).poisson(mean).astype(np.float64)

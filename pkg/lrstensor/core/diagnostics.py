import math

import numpy as np

from ..errors import RankDeficientError, ZeroTensorError
from .core_conf import RANK_TOL
from .decomposition import check_rank, singular_values
from .models import SpectralSummary
from .unfold import as_dense, matricize


def spikiness(t):
    """
    ``sqrt(d*) * |t|_inf / |t|_F``, between 1 (flat) and ``sqrt(d*)``
    (a single spike).
    """
    t = as_dense(t)
    fro = np.linalg.norm(t)
    if fro == 0.0:
        raise ZeroTensorError("spikiness of the zero tensor is undefined")
    return float(math.sqrt(t.size) * np.abs(t).max() / fro)


def incoherence(tk):
    """
    ``max_j max_i |e_i' U_j|^2 * d_j / r_j``; the incoherence parameter is its
    square root.
    """
    return float(
        max(
            np.max(np.sum(u**2, axis=1)) * u.shape[0] / u.shape[1]
            for u in tk.factors
        )
    )


def spectral_summary(t, rank):
    t = as_dense(t)
    rank = check_rank(t.shape, rank)
    spectra = tuple(singular_values(matricize(t, mode)) for mode in range(t.ndim))
    lambda_max = max(float(s[0]) for s in spectra)
    lambda_min = min(float(s[r - 1]) for s, r in zip(spectra, rank))
    if lambda_max == 0.0 or lambda_min <= RANK_TOL * lambda_max:
        raise RankDeficientError(
            f"sigma_r vanishes at declared rank {rank} "
            f"(lambda_min={lambda_min:.3e}, lambda_max={lambda_max:.3e})"
        )
    return SpectralSummary(spectra, lambda_min, lambda_max, lambda_max / lambda_min)

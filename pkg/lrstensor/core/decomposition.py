import numpy as np
import scipy.linalg

from ..errors import RankError, ShapeMismatchError
from .core_conf import GRAM_MAX_ROWS, GRAM_MIN_ASPECT
from .models import TuckerTensor
from .unfold import (
    as_dense,
    matricize,
    mode_product,
    multi_mode_product,
    unfolded_shape,
)


def check_rank(shape, rank):
    """
    Normalize ``rank`` (an int or one entry per mode) and check
    ``1 <= r_j <= min(d_j, d_j^-)``.
    """
    if np.isscalar(rank):
        rank = (int(rank),) * len(shape)
    rank = tuple(int(r) for r in rank)
    if len(rank) != len(shape):
        raise RankError(f"rank {rank} does not match order-{len(shape)} shape {shape}")
    for mode, r in enumerate(rank):
        if not 1 <= r <= min(unfolded_shape(shape, mode)):
            raise RankError(f"rank {r} out of range for mode {mode} of shape {shape}")
    return rank


def _fix_signs(u, s, vt):
    # first nonzero entry of every left singular vector is made positive
    for col in range(u.shape[1]):
        column = u[:, col]
        scale = np.abs(column).max()
        if scale == 0.0:
            continue
        first = np.flatnonzero(np.abs(column) > 1e-12 * scale)[0]
        if column[first] < 0:
            u[:, col] = -column
            vt[col] = -vt[col]
    return u, s, vt


def _gram_route(n_rows, n_cols):
    return n_rows <= GRAM_MAX_ROWS and n_cols > GRAM_MIN_ASPECT * n_rows


def truncated_svd(mat, k):
    """
    Top-``k`` singular triplets ``(U, s, Vt)`` of a dense matrix.

    Short-fat matrices take the Gram route: the leading eigenvectors of
    ``mat @ mat.T`` span the left subspace and a thin SVD of the projected
    ``k x n`` block gives accurate triplets, so both factors stay orthonormal
    to working precision.
    """
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got shape {mat.shape}")
    n_rows, n_cols = mat.shape
    if not 1 <= k <= min(n_rows, n_cols):
        raise RankError(f"k={k} out of range for a {n_rows}x{n_cols} matrix")
    if _gram_route(n_rows, n_cols):
        _, vecs = scipy.linalg.eigh(mat @ mat.T, check_finite=False)
        basis = vecs[:, ::-1][:, :k]
        p, s, vt = scipy.linalg.svd(
            basis.T @ mat, full_matrices=False, check_finite=False
        )
        u = basis @ p
    else:
        u, s, vt = scipy.linalg.svd(mat, full_matrices=False, check_finite=False)
        u, s, vt = u[:, :k], s[:k], vt[:k]
    return _fix_signs(np.ascontiguousarray(u), s, np.ascontiguousarray(vt))


def singular_values(mat):
    """All singular values of a matrix, non-increasing."""
    return scipy.linalg.svdvals(np.asarray(mat, dtype=np.float64), check_finite=False)


def hosvd(t, rank):
    """
    Truncated higher-order SVD: per-mode top-``r_j`` left singular vectors and
    the projected core.
    """
    t = as_dense(t)
    rank = check_rank(t.shape, rank)
    if not np.any(t):
        factors = tuple(np.eye(d, r) for d, r in zip(t.shape, rank))
        return TuckerTensor(np.zeros(rank), factors)
    factors = tuple(
        truncated_svd(matricize(t, mode), r)[0] for mode, r in enumerate(rank)
    )
    core = multi_mode_product(t, factors, transpose=True)
    return TuckerTensor(core, factors)


def hosvd_tucker(tk, rank):
    """
    HOSVD of ``tk.to_dense()`` computed on the small core: with orthonormal
    factors the unfoldings share their spectra with the core's unfoldings.
    """
    rank = check_rank(tk.shape, rank)
    if any(r > q for r, q in zip(rank, tk.ranks)) or not np.any(tk.core):
        return hosvd(tk.to_dense(), rank)
    try:
        small = hosvd(tk.core, rank)
    except RankError:
        return hosvd(tk.to_dense(), rank)
    factors = []
    core = small.core
    for mode, (q, p) in enumerate(zip(tk.factors, small.factors)):
        u = q @ p
        u, _, signs = _fix_signs(u, None, np.ones((u.shape[1], 1)))
        core = mode_product(core, np.diag(signs[:, 0]), mode)
        factors.append(u)
    return TuckerTensor(core, tuple(factors))


def tucker_to_dense(tk):
    return tk.to_dense()

"""Matricization, tensorization and mode products of dense tensors.

Dense tensors are C-ordered float64 ``numpy.ndarray`` objects: the last index
varies fastest. The mode-``j`` unfolding keeps the remaining indices in their
original order and flattens them with the last one varying fastest, so for an
order-3 tensor ``M_0(T)[i0, i1 * d2 + i2] == T[i0, i1, i2]``.
"""

import math

import numpy as np

from ..errors import ModeError, NonFiniteError, ShapeMismatchError


def check_shape(shape):
    shape = tuple(int(d) for d in shape)
    if len(shape) < 2:
        raise ShapeMismatchError(f"tensor order must be >= 2, got shape {shape}")
    if any(d < 1 for d in shape):
        raise ShapeMismatchError(f"every dimension must be >= 1, got {shape}")
    return shape


def as_dense(t, name="tensor"):
    """
    Validate and return ``t`` as a C-ordered float64 array of order >= 2.
    """
    arr = np.ascontiguousarray(t, dtype=np.float64)
    check_shape(arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or Inf entries")
    return arr


def check_mode(ndim, mode):
    if not 0 <= mode < ndim:
        raise ModeError(f"mode {mode} out of range for an order-{ndim} tensor")
    return mode


def unfolded_shape(shape, mode):
    return shape[mode], math.prod(shape) // shape[mode]


def matricize(t, mode):
    """Mode-``mode`` unfolding, a ``d_mode x prod(other dims)`` matrix."""
    t = np.asarray(t)
    check_mode(t.ndim, mode)
    return np.moveaxis(t, mode, 0).reshape(t.shape[mode], -1)


def tensorize(mat, shape, mode):
    """Inverse of :func:`matricize`."""
    shape = check_shape(shape)
    check_mode(len(shape), mode)
    mat = np.asarray(mat)
    if mat.shape != unfolded_shape(shape, mode):
        raise ShapeMismatchError(
            f"matrix of shape {mat.shape} cannot be folded into {shape} "
            f"along mode {mode}"
        )
    moved = (shape[mode],) + shape[:mode] + shape[mode + 1 :]
    return np.ascontiguousarray(np.moveaxis(mat.reshape(moved), 0, mode))


def mode_product(t, w, mode):
    """
    ``t x_mode w``: contracts the columns of ``w`` (p x d_mode) against mode
    ``mode`` of ``t``; the result has ``d_mode`` replaced by ``p``.
    """
    t = np.asarray(t)
    w = np.asarray(w)
    check_mode(t.ndim, mode)
    if w.ndim != 2 or w.shape[1] != t.shape[mode]:
        raise ShapeMismatchError(
            f"matrix of shape {w.shape} does not act on mode {mode} "
            f"of a tensor with shape {t.shape}"
        )
    out = np.tensordot(w, t, axes=(1, mode))
    return np.ascontiguousarray(np.moveaxis(out, 0, mode))


def multi_mode_product(t, matrices, skip=None, transpose=False):
    """
    Apply ``matrices[j]`` (or its transpose) along every mode ``j`` except
    ``skip``.
    """
    out = np.asarray(t)
    for mode, w in enumerate(matrices):
        if mode == skip:
            continue
        out = mode_product(out, w.T if transpose else w, mode)
    return out

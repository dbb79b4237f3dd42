import math
from dataclasses import InitVar, dataclass
from typing import NamedTuple, Tuple

import numpy as np

from ..errors import (
    FormatError,
    NotOrthonormalError,
    RankError,
    ShapeMismatchError,
)
from .core_conf import ORTHONORMAL_TOL, RANK_TOL
from .unfold import check_mode, check_shape, matricize, multi_mode_product


@dataclass(frozen=True, eq=False)
class TuckerTensor:
    """
    ``core x_0 U_0 x_1 U_1 ... x_{m-1} U_{m-1}`` with orthonormal factors.
    """

    core: np.ndarray
    factors: Tuple[np.ndarray, ...]
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        core = np.ascontiguousarray(self.core, dtype=np.float64)
        factors = tuple(np.ascontiguousarray(u, dtype=np.float64) for u in self.factors)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "factors", factors)
        if len(factors) != core.ndim:
            raise ShapeMismatchError(
                f"{len(factors)} factors given for an order-{core.ndim} core"
            )
        for j, u in enumerate(factors):
            if u.ndim != 2 or u.shape[1] != core.shape[j]:
                raise ShapeMismatchError(
                    f"factor {j} has shape {u.shape}, core needs "
                    f"{core.shape[j]} columns"
                )
            if u.shape[1] > u.shape[0]:
                raise RankError(f"rank {u.shape[1]} exceeds dimension {u.shape[0]}")
        if validate:
            for j, u in enumerate(factors):
                gap = np.linalg.norm(u.T @ u - np.eye(u.shape[1]))
                if gap > ORTHONORMAL_TOL:
                    raise NotOrthonormalError(
                        f"factor {j} is not orthonormal (|U'U - I|_F = {gap:.3e})"
                    )

    @property
    def shape(self):
        return tuple(u.shape[0] for u in self.factors)

    @property
    def ranks(self):
        return tuple(self.core.shape)

    @property
    def order(self):
        return self.core.ndim

    def to_dense(self):
        return multi_mode_product(self.core, self.factors)

    def norm(self):
        return float(np.linalg.norm(self.core))

    def core_singular_values(self, mode):
        check_mode(self.order, mode)
        return np.linalg.svd(matricize(self.core, mode), compute_uv=False)

    def is_degenerate(self, tol=RANK_TOL):
        """
        True when some core unfolding is rank deficient, i.e. the point left the
        fixed-rank manifold.
        """
        for mode in range(self.order):
            s = self.core_singular_values(mode)
            if s.size == 0 or s[0] == 0.0 or s[-1] <= tol * s[0]:
                return True
        return False


@dataclass(frozen=True, eq=False)
class SparseTensor:
    """
    Coordinate list of ``(multi-index, value)`` entries, kept sorted by flat
    (row-major) index.
    """

    shape: Tuple[int, ...]
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        shape = check_shape(self.shape)
        indices = np.asarray(self.indices, dtype=np.int64).reshape(-1, len(shape))
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if indices.shape[0] != values.shape[0]:
            raise ShapeMismatchError(
                f"{indices.shape[0]} indices for {values.shape[0]} values"
            )
        if indices.size and (
            np.any(indices < 0) or np.any(indices >= np.asarray(shape))
        ):
            raise ShapeMismatchError(f"multi-index outside shape {shape}")
        if not np.all(np.isfinite(values)):
            raise FormatError("sparse tensor values must be finite")
        flat = np.ravel_multi_index(tuple(indices.T), shape) if indices.size else (
            np.zeros(0, dtype=np.int64)
        )
        order = np.argsort(flat, kind="stable")
        flat = flat[order]
        if flat.size > 1 and np.any(flat[1:] == flat[:-1]):
            raise ShapeMismatchError("duplicate multi-index in sparse tensor")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "indices", np.ascontiguousarray(indices[order]))
        object.__setattr__(self, "values", np.ascontiguousarray(values[order]))

    @classmethod
    def empty(cls, shape):
        shape = check_shape(shape)
        return cls(shape, np.zeros((0, len(shape)), dtype=np.int64), np.zeros(0))

    @classmethod
    def from_dense(cls, t):
        t = np.asarray(t, dtype=np.float64)
        indices = np.argwhere(t != 0)
        return cls(t.shape, indices, t[tuple(indices.T)])

    @classmethod
    def from_mask(cls, mask, values):
        """Entries at the ``True`` positions of ``mask`` (row-major order)."""
        mask = np.asarray(mask, dtype=bool)
        return cls(mask.shape, np.argwhere(mask), values)

    @property
    def nnz(self):
        return int(self.values.shape[0])

    def flat_indices(self):
        if not self.nnz:
            return np.zeros(0, dtype=np.int64)
        return np.ravel_multi_index(tuple(self.indices.T), self.shape)

    def to_dense(self):
        out = np.zeros(self.shape)
        if self.nnz:
            out[tuple(self.indices.T)] = self.values
        return out

    def mask(self):
        out = np.zeros(self.shape, dtype=bool)
        if self.nnz:
            out[tuple(self.indices.T)] = True
        return out

    def support(self):
        return frozenset(tuple(int(i) for i in row) for row in self.indices)

    def entries(self):
        return [
            (tuple(int(i) for i in row), float(v))
            for row, v in zip(self.indices, self.values)
        ]

    def norm(self):
        return float(np.linalg.norm(self.values))

    def nonzero(self):
        """Drop explicitly stored zeros."""
        keep = self.values != 0
        return SparseTensor(self.shape, self.indices[keep], self.values[keep])

    def slice_counts(self, mode):
        """Number of stored entries in each mode-``mode`` slice."""
        check_mode(len(self.shape), mode)
        return np.bincount(self.indices[:, mode], minlength=self.shape[mode])

    def slice_sparsity(self):
        """
        Largest fraction of stored entries over all slices of all modes, the
        smallest alpha with this tensor in S_alpha.
        """
        d_star = math.prod(self.shape)
        fractions = [
            self.slice_counts(mode).max() / (d_star // d)
            for mode, d in enumerate(self.shape)
        ]
        return float(max(fractions)) if self.nnz else 0.0


class SpectralSummary(NamedTuple):
    singular_values: Tuple[np.ndarray, ...]
    lambda_min: float
    lambda_max: float
    kappa: float

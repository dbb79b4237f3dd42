"""Tangent spaces of the fixed-Tucker-rank manifold.

A tangent vector at ``C x U_0 ... x U_{m-1}`` is stored as a core part ``D``
and one mode part ``W_j`` per mode with ``W_j' U_j = 0``; its dense form is
``D x_j U_j + sum_i C x_{j != i} U_j x_i W_i``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from ..core import TuckerTensor, as_dense, matricize, multi_mode_product
from ..errors import RankDeficientError, ShapeMismatchError
from ..utils import warn
from .manifold_conf import PINV_RTOL


@dataclass(frozen=True, eq=False)
class TangentVector:
    base: TuckerTensor
    core_part: np.ndarray
    mode_parts: Tuple[np.ndarray, ...]

    def __post_init__(self):
        core_part = np.ascontiguousarray(self.core_part, dtype=np.float64)
        mode_parts = tuple(
            np.ascontiguousarray(w, dtype=np.float64) for w in self.mode_parts
        )
        if core_part.shape != self.base.ranks:
            raise ShapeMismatchError(
                f"core part {core_part.shape} does not match ranks {self.base.ranks}"
            )
        if len(mode_parts) != self.base.order or any(
            w.shape != u.shape for w, u in zip(mode_parts, self.base.factors)
        ):
            raise ShapeMismatchError("mode parts must match the base factor shapes")
        object.__setattr__(self, "core_part", core_part)
        object.__setattr__(self, "mode_parts", mode_parts)

    @classmethod
    def zeros(cls, base):
        return cls(
            base,
            np.zeros(base.ranks),
            tuple(np.zeros_like(u) for u in base.factors),
        )

    @property
    def shape(self):
        return self.base.shape

    def to_dense(self):
        base = self.base
        out = multi_mode_product(self.core_part, base.factors)
        for mode, w in enumerate(self.mode_parts):
            factors = list(base.factors)
            factors[mode] = w
            out += multi_mode_product(base.core, factors)
        return out

    def norm(self):
        """
        Frobenius norm from the parts; the terms are mutually orthogonal under
        the gauge condition.
        """
        total = float(np.sum(self.core_part**2))
        for mode, w in enumerate(self.mode_parts):
            total += float(np.sum((w @ matricize(self.base.core, mode)) ** 2))
        return float(np.sqrt(total))

    def gauge_residual(self):
        return max(
            float(np.linalg.norm(w.T @ u))
            for w, u in zip(self.mode_parts, self.base.factors)
        )

    def combine(self, base_coef, tangent_coef):
        """
        ``base_coef * base + tangent_coef * self`` as a Tucker tensor of
        multilinear rank at most ``2r``.

        Each mode basis ``[U_j, W_j]`` is orthonormalized by an economic QR; the
        triangular factors are folded into the block core.
        """
        base = self.base
        ranks = base.ranks
        block = np.zeros(tuple(2 * r for r in ranks))
        head = tuple(slice(0, r) for r in ranks)
        block[head] = base_coef * base.core + tangent_coef * self.core_part
        for mode, r in enumerate(ranks):
            index = list(head)
            index[mode] = slice(r, 2 * r)
            block[tuple(index)] = tangent_coef * base.core
        bases, triangles = [], []
        for u, w in zip(base.factors, self.mode_parts):
            q, tri = scipy.linalg.qr(
                np.hstack([u, w]), mode="economic", check_finite=False
            )
            bases.append(q)
            triangles.append(tri)
        core = multi_mode_product(block, triangles)
        return TuckerTensor(core, tuple(bases), validate=False)

    def to_tucker(self):
        return self.combine(0.0, 1.0)


def _core_pinv(core, mode, strict):
    unfolded = matricize(core, mode)
    s = np.linalg.svd(unfolded, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= PINV_RTOL * s[0]:
        message = (
            f"core unfolding {mode} is rank deficient "
            f"(sigma_min={s[-1]:.3e}, sigma_max={s[0]:.3e})"
        )
        if strict:
            raise RankDeficientError(message)
        warn(message)
    return scipy.linalg.pinv(unfolded, rtol=PINV_RTOL)


def tangent_project(base, g, strict=True):
    """
    Orthogonal projection of ``g`` onto the tangent space at ``base``.

    ``D = g x_j U_j'`` and
    ``W_i = (I - U_i U_i') M_i(g x_{j != i} U_j') M_i(C)^+``, re-projected onto
    the complement of ``U_i`` so the gauge condition holds to working precision.
    With ``strict=False`` a rank-deficient core only warns and the
    pseudo-inverse cuts the vanishing directions.
    """
    g = as_dense(g, "gradient")
    if g.shape != base.shape:
        raise ShapeMismatchError(
            f"tensor of shape {g.shape} projected at a point of shape {base.shape}"
        )
    factors = base.factors
    core_part = multi_mode_product(g, factors, transpose=True)
    mode_parts = []
    for mode, u in enumerate(factors):
        partial = matricize(
            multi_mode_product(g, factors, skip=mode, transpose=True), mode
        )
        partial = partial - u @ (u.T @ partial)
        w = partial @ _core_pinv(base.core, mode, strict)
        w = w - u @ (u.T @ w)
        mode_parts.append(w)
    return TangentVector(base, core_part, tuple(mode_parts))


def tangent_to_dense(v):
    return v.to_dense()

import itertools
import math

import numpy as np
import pytest

from lrstensor.core import TuckerTensor, hosvd, matricize, singular_values
from lrstensor.errors import ConfigError, RankDeficientError, ShapeMismatchError
from lrstensor.manifold import (
    NO_TRIM,
    TangentVector,
    entrywise_truncate,
    tangent_project,
    tangent_to_dense,
    trim,
    trunc,
)
from tests.conftest import random_tucker


def explicit_tangent_basis(base):
    """Columns spanning the tangent space, one per coordinate direction."""
    columns = []
    factors = base.factors
    for idx in itertools.product(*(range(r) for r in base.ranks)):
        d = np.zeros(base.ranks)
        d[idx] = 1.0
        columns.append(TangentVector(base, d, tuple(np.zeros_like(u) for u in factors)))
    for mode, u in enumerate(factors):
        for a, b in itertools.product(range(u.shape[0]), range(u.shape[1])):
            parts = [np.zeros_like(f) for f in factors]
            parts[mode][a, b] = 1.0
            columns.append(TangentVector(base, np.zeros(base.ranks), tuple(parts)))
    return np.stack([v.to_dense().ravel() for v in columns], axis=1)


@pytest.mark.parametrize("seed", range(5))
def test_projection_matches_least_squares(seed):
    rng = np.random.default_rng(seed)
    base = random_tucker(rng, (6, 6, 6), (2, 2, 2))
    g = rng.standard_normal((6, 6, 6))
    basis = explicit_tangent_basis(base)
    coef, *_ = np.linalg.lstsq(basis, g.ravel(), rcond=None)
    oracle = (basis @ coef).reshape(g.shape)
    projected = tangent_to_dense(tangent_project(base, g))
    assert np.linalg.norm(projected - oracle) <= 1e-8 * np.linalg.norm(oracle)


def test_projection_fixes_base_point(rng):
    base = random_tucker(rng, (5, 6, 7), (2, 3, 2))
    dense = base.to_dense()
    projected = tangent_to_dense(tangent_project(base, dense))
    np.testing.assert_allclose(projected, dense, atol=1e-10)


def test_projection_kills_orthogonal_directions(rng):
    base = random_tucker(rng, (6, 6, 6), (2, 2, 2))
    # complement in every mode is orthogonal to the tangent space
    comps = []
    for u in base.factors:
        q, _ = np.linalg.qr(np.hstack([u, rng.standard_normal((6, 4))]))
        comps.append(q[:, 2:])
    g = np.einsum("ia,jb,kc,abc->ijk", *comps, rng.standard_normal((4, 4, 4)))
    projected = tangent_project(base, g)
    assert np.linalg.norm(tangent_to_dense(projected)) <= 1e-10 * np.linalg.norm(g)


def test_projection_properties(rng):
    base = random_tucker(rng, (6, 7, 8), (2, 2, 3))
    g = rng.standard_normal(base.shape)
    h = rng.standard_normal(base.shape)
    pg = tangent_project(base, g)
    dense_pg = pg.to_dense()
    again = tangent_project(base, dense_pg)
    np.testing.assert_allclose(again.to_dense(), dense_pg, atol=1e-9)
    left = np.vdot(dense_pg, h)
    right = np.vdot(g, tangent_project(base, h).to_dense())
    assert math.isclose(left, right, rel_tol=1e-9)
    assert np.linalg.norm(dense_pg) <= np.linalg.norm(g)
    assert pg.gauge_residual() <= 1e-9
    assert math.isclose(pg.norm(), np.linalg.norm(dense_pg), rel_tol=1e-10)


def test_tangent_rank_bound(rng):
    base = random_tucker(rng, (8, 8, 8), (2, 2, 2))
    dense = tangent_project(base, rng.standard_normal((8, 8, 8))).to_dense()
    for mode in range(3):
        s = singular_values(matricize(dense, mode))
        assert s[4] < 1e-9 * s[0]


def test_tangent_zero_and_core_only(rng):
    base = random_tucker(rng, (4, 5, 6), (2, 2, 2))
    assert not np.any(TangentVector.zeros(base).to_dense())
    core = rng.standard_normal((2, 2, 2))
    v = TangentVector(base, core, tuple(np.zeros_like(u) for u in base.factors))
    np.testing.assert_allclose(
        v.to_dense(), TuckerTensor(core, base.factors).to_dense(), atol=1e-12
    )


def test_tangent_combine_matches_dense(rng):
    base = random_tucker(rng, (6, 7, 8), (2, 2, 2))
    v = tangent_project(base, rng.standard_normal(base.shape))
    combined = v.combine(1.0, -0.3)
    expected = base.to_dense() - 0.3 * v.to_dense()
    np.testing.assert_allclose(combined.to_dense(), expected, atol=1e-10)
    assert combined.ranks == (4, 4, 4)
    np.testing.assert_allclose(v.to_tucker().to_dense(), v.to_dense(), atol=1e-10)


def test_tangent_shape_checks(rng):
    base = random_tucker(rng, (4, 4, 4), (2, 2, 2))
    with pytest.raises(ShapeMismatchError):
        TangentVector(base, np.zeros((2, 2)), tuple(base.factors))
    with pytest.raises(ShapeMismatchError):
        tangent_project(base, np.zeros((4, 4, 5)))


def test_rank_deficient_core():
    core = np.zeros((2, 2, 2))
    core[0, 0, 0] = 1.0
    base = TuckerTensor(core, tuple(np.eye(4, 2) for _ in range(3)))
    g = np.ones((4, 4, 4))
    with pytest.raises(RankDeficientError):
        tangent_project(base, g)
    with pytest.warns(UserWarning):
        v = tangent_project(base, g, strict=False)
    assert np.all(np.isfinite(v.to_dense()))


def test_entrywise_truncate_sign_rule():
    w = np.array([[-3.0, 0.5, 2.0]])
    np.testing.assert_array_equal(entrywise_truncate(w, 1.0), [[-1.0, 0.5, 1.0]])
    assert not np.any(entrywise_truncate(w, 0.0))
    np.testing.assert_array_equal(entrywise_truncate(w, 3.0), w)
    np.testing.assert_array_equal(entrywise_truncate(w, math.inf), w)


def test_entrywise_truncate_negative_level():
    with pytest.raises(ConfigError):
        entrywise_truncate(np.ones((2, 2)), -1.0)


def test_trunc_keeps_boundary_and_matches_oracle(rng):
    a = rng.standard_normal((5, 6))
    tau = float(np.median(np.abs(a)))
    oracle = np.where(np.abs(a) > tau, tau * np.sign(a), a)
    np.testing.assert_array_equal(trunc(a, tau), oracle)
    edge = np.array([[2.0, -2.0], [1.0, 0.0]])
    np.testing.assert_array_equal(trunc(edge, 2.0), edge)


def test_trim_without_truncation_is_hosvd(rng):
    w = rng.standard_normal((4, 5, 6))
    np.testing.assert_allclose(
        trim(w, NO_TRIM, (2, 2, 2)).to_dense(), hosvd(w, (2, 2, 2)).to_dense()
    )


def test_trim_keeps_flat_low_rank_tensor(rng):
    tk = random_tucker(rng, (6, 6, 6), (2, 2, 2))
    dense = tk.to_dense()
    zeta = 2.0 * np.abs(dense).max()
    for w in (dense, tk):
        out = trim(w, zeta, (2, 2, 2)).to_dense()
        assert np.linalg.norm(out - dense) <= 1e-10 * np.linalg.norm(dense)


def test_trim_tucker_input_with_truncation(rng):
    tk = random_tucker(rng, (6, 6, 6), (3, 3, 3))
    zeta = np.abs(tk.to_dense()).max()
    expected = hosvd(entrywise_truncate(tk.to_dense(), zeta / 2), (2, 2, 2))
    np.testing.assert_allclose(
        trim(tk, zeta, (2, 2, 2)).to_dense(), expected.to_dense(), atol=1e-12
    )

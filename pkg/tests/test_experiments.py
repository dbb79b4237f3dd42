import math
import statistics

import numpy as np
import pytest

from lrstensor.errors import ConfigError
from lrstensor.experiment import (
    ExperimentSpec,
    build_model,
    compare_seed,
    fit_instance,
    load_source,
    parse_alpha_grid,
    parse_rank_grid,
    run_fit,
    run_synth,
)
from lrstensor.init import initialize
from lrstensor.losses import (
    BernoulliLoss,
    GaussianLoss,
    LinkFunction,
    LossKind,
    PoissonLoss,
)
from lrstensor.solver import (
    SolverConfig,
    SolverKind,
    bic_scan,
    pgd_lowrank,
    rgrad_lowrank,
    rgrad_sparse,
)
from lrstensor.synth import InstanceConfig, NoiseKind, NoiseLaw, generate_instance


def test_spec_parses_strings_and_lists():
    spec = ExperimentSpec.from_mapping(
        {
            "model": "Poisson",
            "dims": "6,7,8",
            "rank": [2, 2, 2],
            "zeta": "inf",
            "seeds": "1,2,3",
            "l_max": "20",
        }
    )
    assert spec.model is LossKind.POISSON
    assert spec.dims == (6, 7, 8)
    assert spec.seeds == (1, 2, 3)
    assert math.isinf(spec.zeta)
    assert spec.init_config().zeta is None
    assert spec.l_max == 20


def test_scalar_rank_broadcasts():
    spec = ExperimentSpec.from_mapping({"dims": [5, 5, 5], "rank": 2})
    assert spec.solver_config().rank == 2
    assert spec.instance_config().rank == 2


@pytest.mark.parametrize(
    "data",
    [
        {"colour": "blue"},
        {"sigma": {"value": 1}},
        {"l_max": 2.5},
        {"escalate": "yes"},
        {"solver": "newton"},
        ["alpha", 0.1],
    ],
)
def test_spec_rejects(data):
    with pytest.raises(ConfigError):
        ExperimentSpec.from_mapping(data)


def test_spec_from_file_with_comments(tmp_path):
    path = tmp_path / "spec.yaml"
    path.write_text("# sg-rpca\nmodel: gaussian  # default\nrank: 2,2,2\n", "utf-8")
    assert ExperimentSpec.from_file(path).rank == (2, 2, 2)
    path.write_text("rank: [2, 2\n", "utf-8")
    with pytest.raises(ConfigError):
        ExperimentSpec.from_file(path)


def test_true_alpha_feeds_the_generator():
    spec = ExperimentSpec.from_mapping(
        {"dims": [5, 5, 5], "rank": 1, "alpha": 0.1, "true_alpha": 0.02}
    )
    assert spec.instance_config().alpha == 0.02
    assert spec.solver_config().alpha == 0.1
    default = ExperimentSpec.from_mapping({"dims": [5, 5, 5], "rank": 1, "alpha": 0.1})
    assert default.instance_config().alpha == 0.1


def test_student_t_sigma_is_the_scale():
    spec = ExperimentSpec.from_mapping({"noise": "student_t", "df": 3, "sigma": 0.5})
    assert spec.noise_law() == NoiseLaw(NoiseKind.STUDENT_T, df=3.0, scale=0.5)


def test_digest_tracks_values():
    first = ExperimentSpec.from_mapping({"rank": 2, "alpha": 0.1})
    same = ExperimentSpec.from_mapping({"alpha": 0.1, "rank": "2"})
    other = ExperimentSpec.from_mapping({"rank": 2, "alpha": 0.2})
    assert first.digest() == same.digest()
    assert first.digest() != other.digest()


def test_require():
    spec = ExperimentSpec.from_mapping({})
    with pytest.raises(ConfigError, match="dims, rank"):
        spec.require("dims", "rank")


def test_grids():
    assert parse_rank_grid("2,2,2; 3,3,3") == [(2, 2, 2), (3, 3, 3)]
    assert parse_alpha_grid("0,0.05") == [0.0, 0.05]
    for bad in (";", "2,x"):
        with pytest.raises(ConfigError):
            parse_rank_grid(bad)
    with pytest.raises(ConfigError):
        parse_alpha_grid("-0.1")


def test_escalation_needs_the_pruned_solver():
    spec = ExperimentSpec.from_mapping(
        {"dims": [6, 6, 6], "rank": 2, "solver": "pgd", "escalate": True}
    )
    instance = generate_instance(spec.instance_config(), 0)
    with pytest.raises(ConfigError):
        fit_instance(spec, build_model(spec, instance), instance)


def test_fit_with_hard_threshold(tmp_path):
    spec = ExperimentSpec.from_mapping(
        {"dims": [8, 8, 8], "rank": 2, "alpha": 0.05, "l_max": 10, "delta_star": 0.5}
    )
    run_synth(spec, 0, tmp_path / "instance")
    outcome = run_fit(spec, tmp_path / "instance", tmp_path / "fit")
    assert np.all(np.abs(outcome.s_hat.values) > 0.5)
    assert outcome.s_hat.nnz <= outcome.fit.s_hat.nnz


def test_load_source(tmp_path):
    spec = ExperimentSpec.from_mapping({"dims": [4, 4, 4], "rank": 1})
    run_synth(spec, 0, tmp_path / "instance")
    assert load_source(tmp_path / "instance").has_truth
    bare = load_source(tmp_path / "instance" / "observation.lrst")
    assert not bare.has_truth and bare.shape == (4, 4, 4)


def test_compare_uses_one_instance_and_start():
    spec = ExperimentSpec.from_mapping(
        {"dims": [8, 8, 8], "rank": 2, "alpha": 0.02, "l_max": 3}
    )
    run = compare_seed(spec, 4)
    assert set(run.fits) == {kind.value for kind in SolverKind}
    first_losses = {fit.trace.records[0].loss for fit in run.fits.values()}
    assert len({round(v, 12) for v in first_losses}) <= 2
    assert run.observation_sha256 == generate_instance(
        spec.instance_config(), 4
    ).observation_digest()


def final_error(fit):
    return fit.trace.rel_errors[-1]


def fit_gaussian(instance, rank, alpha, solver=rgrad_sparse, **keys):
    model = GaussianLoss(instance.observation)
    start = initialize(model, rank)
    config = SolverConfig(rank=rank, alpha=alpha, **keys)
    return solver(model, start, config, truth=instance.truth)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_exact_noiseless_recovery(seed):
    config = InstanceConfig(dims=(50, 50, 50), rank=2, alpha=0.02, amp=1.0)
    instance = generate_instance(config, seed)
    realized = instance.truth_s.slice_sparsity()
    fit = fit_gaussian(instance, 2, realized, gamma=1.1, l_max=100, rel_tol=1e-13)
    assert final_error(fit) <= 1e-8
    truth_s = instance.truth_s.to_dense()
    s_hat = fit.s_hat.to_dense()
    support = truth_s != 0
    assert np.all(s_hat[support] != 0)
    np.testing.assert_allclose(s_hat[support], truth_s[support], atol=1e-8)
    errors = fit.trace.rel_errors
    for before, after in zip(errors, errors[1:]):
        if 1e-7 <= before <= 1e-1:
            assert after <= 0.99 * before


@pytest.mark.slow
def test_noise_level_trend():
    means = []
    for sigma in (0.01, 0.02, 0.03, 0.04, 0.05):
        errors = []
        for seed in range(10):
            config = InstanceConfig(
                dims=(60, 60, 60), rank=2, noise=NoiseLaw(sigma=sigma)
            )
            instance = generate_instance(config, seed)
            rgrad = fit_gaussian(instance, 2, 0.0, rgrad_lowrank, l_max=50)
            pgd = fit_gaussian(instance, 2, 0.0, pgd_lowrank, l_max=50)
            assert final_error(rgrad) == pytest.approx(final_error(pgd), rel=0.1)
            errors.append(final_error(rgrad))
        means.append(statistics.mean(errors))
    assert all(low < high for low, high in zip(means, means[1:]))


@pytest.mark.slow
def test_heavy_tail_needs_the_sparse_part():
    ratios = []
    for seed in range(10):
        config = InstanceConfig(
            dims=(40, 40, 40),
            rank=2,
            noise=NoiseLaw(NoiseKind.STUDENT_T, df=2.2, scale=0.1),
        )
        instance = generate_instance(config, seed)
        pruned = fit_gaussian(instance, 2, 0.01, l_max=100)
        plain = fit_gaussian(instance, 2, 0.0, rgrad_lowrank, l_max=100)
        ratios.append(final_error(pruned) / final_error(plain))
    assert statistics.median(ratios) <= 0.5


@pytest.mark.slow
def test_bic_picks_the_true_rank():
    wins = 0
    for seed in range(10):
        config = InstanceConfig(
            dims=(40, 40, 40), rank=3, alpha=0.05, noise=NoiseLaw(sigma=0.01)
        )
        instance = generate_instance(config, seed)
        scan = bic_scan(
            GaussianLoss(instance.observation),
            [1, 2, 3, 4, 5],
            [0.05, 0.1],
            SolverConfig(rank=3, l_max=100),
            threads=2,
        )
        wins += scan.best.rank == (3, 3, 3)
    assert wins >= 8


@pytest.mark.slow
def test_binary_pruning_tracks_the_plain_solver():
    # logits within +-5 under a sigma = 5 link: the Bernoulli noise floor, not
    # the spikes, sets both errors here
    ratios = []
    link = LinkFunction(sigma=5.0)
    for seed in range(10):
        config = InstanceConfig(
            dims=(60, 60, 60),
            rank=2,
            model=LossKind.BERNOULLI,
            alpha=0.005,
            amp=10.0,
            sparse_law="constant",
            linf=5.0,
            link=link,
        )
        instance = generate_instance(config, seed)
        model = BernoulliLoss(instance.observation, link)
        start = initialize(model, 2)
        pruned = rgrad_sparse(
            model, start, SolverConfig(rank=2, alpha=0.005), truth=instance.truth
        )
        plain = pgd_lowrank(model, start, SolverConfig(rank=2), truth=instance.truth)
        ratios.append(final_error(pruned) / final_error(plain))
    assert statistics.median(ratios) <= 1.2


@pytest.mark.slow
def test_poisson_error_falls_with_intensity():
    better = 0
    for seed in range(10):
        errors = []
        for intensity in (10.0, 50.0):
            config = InstanceConfig(
                dims=(30, 30, 30),
                rank=2,
                model=LossKind.POISSON,
                alpha=0.02,
                linf=0.5,
                sparse_linf=0.5,
                intensity=intensity,
            )
            instance = generate_instance(config, seed)
            model = PoissonLoss(instance.observation, intensity)
            start = initialize(model, 2)
            fit = rgrad_sparse(
                model, start, SolverConfig(rank=2, alpha=0.02), truth=instance.truth
            )
            errors.append(final_error(fit))
        better += errors[1] < errors[0]
    assert better >= 8

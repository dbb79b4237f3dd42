import pytest
import yaml
from click.testing import CliRunner

from lrstensor import __version__
from lrstensor.cli import EXIT_USAGE, cli
from lrstensor.errors import NonFiniteError
from lrstensor.experiment import runners

SPEC = {
    "model": "gaussian",
    "dims": [10, 10, 10],
    "rank": [2, 2, 2],
    "alpha": 0.02,
    "amp": 1.0,
    "sigma": 0.0,
    "l_max": 20,
    "seeds": [1],
}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def spec(write_spec):
    return write_spec(**SPEC)


@pytest.fixture
def instance_dir(runner, spec, tmp_path):
    out = tmp_path / "instance"
    result = runner.invoke(cli, ["--out", str(out), "synth", str(spec)])
    assert result.exit_code == 0, result.output
    return out


def read_lines(path):
    return path.read_text(encoding="utf-8").splitlines()


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_generate_instance(instance_dir):
    assert sorted(p.name for p in instance_dir.iterdir()) == [
        "meta.yaml",
        "observation.lrst",
        "truth_S.csv",
        "truth_T.lrst",
    ]
    meta = yaml.safe_load((instance_dir / "meta.yaml").read_text("utf-8"))
    assert meta["seed"] == 1
    assert meta["dims"] == [10, 10, 10]


def test_generate_instance_is_reproducible(runner, spec, instance_dir, tmp_path):
    again = tmp_path / "again"
    result = runner.invoke(cli, ["--out", str(again), "synth", str(spec)])
    assert result.exit_code == 0, result.output
    for path in instance_dir.iterdir():
        assert (again / path.name).read_bytes() == path.read_bytes()


def test_seed_option_overrides_spec(runner, spec, instance_dir, tmp_path):
    other = tmp_path / "other"
    args = ["--seed", "2", "--out", str(other), "synth", str(spec)]
    assert runner.invoke(cli, args).exit_code == 0
    assert (other / "observation.lrst").read_bytes() != (
        instance_dir / "observation.lrst"
    ).read_bytes()


def test_refuses_non_empty_output(runner, spec, instance_dir):
    result = runner.invoke(cli, ["--out", str(instance_dir), "synth", str(spec)])
    assert result.exit_code == EXIT_USAGE
    forced = ["--force", "--out", str(instance_dir), "synth", str(spec)]
    assert runner.invoke(cli, forced).exit_code == 0


def test_generate_fit(runner, spec, instance_dir, tmp_path):
    out = tmp_path / "fit"
    result = runner.invoke(
        cli, ["--out", str(out), "fit", str(spec), str(instance_dir)]
    )
    assert result.exit_code in (0, 2), result.output
    assert sorted(p.name for p in out.iterdir()) == [
        "s_hat.csv",
        "summary.yaml",
        "t_hat.lrst",
        "trace.csv",
    ]
    trace = read_lines(out / "trace.csv")
    assert trace[0] == "iter,loss,rel_change,zeta,supp_size,rel_err_T,err_S"
    summary = yaml.safe_load((out / "summary.yaml").read_text("utf-8"))
    assert summary["exit_code"] == result.exit_code
    assert summary["iterations"] == len(trace) - 2


def test_fit_single_iteration(runner, write_spec, instance_dir, tmp_path):
    spec = write_spec("one.yaml", **{**SPEC, "l_max": 1, "rel_tol": 0.0})
    out = tmp_path / "fit"
    result = runner.invoke(
        cli, ["--out", str(out), "fit", str(spec), str(instance_dir)]
    )
    assert result.exit_code == 2, result.output
    assert len(read_lines(out / "trace.csv")) == 3


def test_fit_init_failure_is_numerical(
    runner, spec, instance_dir, tmp_path, monkeypatch
):
    def overflow(*args, **kwargs):
        raise NonFiniteError("warm start overflowed")

    monkeypatch.setattr(runners, "initialize", overflow)
    result = runner.invoke(
        cli, ["--out", str(tmp_path / "fit"), "fit", str(spec), str(instance_dir)]
    )
    assert result.exit_code == 3, result.output
    assert "warm start overflowed" in result.output


def test_fit_is_reproducible(runner, spec, instance_dir, tmp_path):
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        runner.invoke(cli, ["--out", str(out), "fit", str(spec), str(instance_dir)])
        outputs.append(out)
    for name in ("trace.csv", "summary.yaml", "s_hat.csv", "t_hat.lrst"):
        assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes()


def test_fit_bare_observation(runner, spec, instance_dir, tmp_path):
    out = tmp_path / "fit"
    observation = instance_dir / "observation.lrst"
    result = runner.invoke(cli, ["--out", str(out), "fit", str(spec), str(observation)])
    assert result.exit_code in (0, 2), result.output
    assert read_lines(out / "trace.csv")[0] == "iter,loss,rel_change,zeta,supp_size"


def test_fit_model_mismatch(runner, write_spec, instance_dir, tmp_path):
    spec = write_spec("binary.yaml", **{**SPEC, "model": "bernoulli"})
    result = runner.invoke(
        cli, ["--out", str(tmp_path / "fit"), "fit", str(spec), str(instance_dir)]
    )
    assert result.exit_code == EXIT_USAGE


@pytest.mark.parametrize(
    "keys",
    [
        {"colour": "blue"},
        {"alpha": "lots"},
        {"rank": [2, 2, 2, 2]},
        {"noise": "cauchy"},
        {"gamma": 0.5},
    ],
)
def test_bad_spec_is_a_usage_error(runner, write_spec, keys):
    spec = write_spec("bad.yaml", **{**SPEC, **keys})
    result = runner.invoke(cli, ["synth", str(spec)])
    assert result.exit_code == EXIT_USAGE, result.output


def test_missing_spec_file(runner, tmp_path):
    result = runner.invoke(cli, ["synth", str(tmp_path / "missing.yaml")])
    assert result.exit_code == EXIT_USAGE


def test_bad_thread_count(runner, spec):
    result = runner.invoke(cli, ["--threads", "0", "synth", str(spec)])
    assert result.exit_code == EXIT_USAGE


def test_generate_bic(runner, spec, instance_dir, tmp_path):
    out = tmp_path / "bic"
    args = ["--out", str(out), "--threads", "2", "bic", str(spec), str(instance_dir)]
    result = runner.invoke(cli, args + ["--ranks", "1,1,1;2,2,2", "--alphas", "0,0.02"])
    assert result.exit_code == 0, result.output
    lines = read_lines(out / "bic.csv")
    assert lines[0] == "r1,r2,r3,alpha,bic,converged"
    assert len(lines) == 5
    summary = yaml.safe_load((out / "bic.yaml").read_text("utf-8"))
    assert summary["cells"] == 4
    assert "Best rank" in result.output


@pytest.mark.parametrize("grid", [["--ranks", "2,2,x"], ["--alphas", "0.1,1.5"]])
def test_bic_malformed_grid(runner, spec, instance_dir, tmp_path, grid):
    args = ["--out", str(tmp_path / "bic"), "bic", str(spec), str(instance_dir)]
    result = runner.invoke(cli, args + grid)
    assert result.exit_code == EXIT_USAGE


def test_generate_compare(runner, write_spec, tmp_path):
    spec = write_spec("compare.yaml", **{**SPEC, "l_max": 3, "seeds": [1, 2]})
    out = tmp_path / "compare"
    result = runner.invoke(cli, ["--out", str(out), "compare", str(spec)])
    assert result.exit_code == 0, result.output
    for seed in (1, 2):
        lines = read_lines(out / f"compare_seed{seed}.csv")
        assert lines[0] == "solver,iter,rel_err,step_ms"
        solvers = {line.split(",")[0] for line in lines[1:]}
        assert solvers == {"rgrad_sparse", "rgrad_lowrank", "pgd"}
    summary = yaml.safe_load((out / "compare.yaml").read_text("utf-8"))
    assert set(summary["seeds"]) == {1, 2}


def test_generate_report(runner, spec, instance_dir, tmp_path):
    out = tmp_path / "fit"
    runner.invoke(cli, ["--out", str(out), "fit", str(spec), str(instance_dir)])
    pdf = tmp_path / "report.pdf"
    result = runner.invoke(cli, ["report", str(out), "--output", str(pdf)])
    assert result.exit_code == 0, result.output
    assert pdf.read_bytes().startswith(b"%PDF")


def test_report_needs_a_fit_directory(runner, instance_dir):
    result = runner.invoke(cli, ["report", str(instance_dir)])
    assert result.exit_code == 1


import numpy as np
import pytest
import yaml

from lrstensor.core import TuckerTensor


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def orthonormal(rng, d, r):
    q, _ = np.linalg.qr(rng.standard_normal((d, r)))
    return q


def random_tucker(rng, dims, rank):
    """Tucker tensor with a Gaussian core and random orthonormal factors."""
    core = rng.standard_normal(rank)
    return TuckerTensor(core, tuple(orthonormal(rng, d, r) for d, r in zip(dims, rank)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def write_spec(tmp_path):
    def _write_spec(name="spec.yaml", **keys):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(keys), encoding="utf-8")
        return path

    return _write_spec

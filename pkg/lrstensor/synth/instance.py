import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from .. import __version__
from ..core import SparseTensor, dumps_lrst, load_lrst, load_sparse_csv, save_sparse_csv
from ..errors import FormatError
from ..losses import LinkFunction, LossKind
from ..utils import (
    atomic_write_bytes,
    atomic_write_text,
    canonical_yaml,
    prepare_output_dir,
)
from .config import InstanceConfig, NoiseKind, NoiseLaw
from .generators import (
    add_noise,
    gen_lowrank,
    gen_sparse,
    sample_bernoulli,
    sample_poisson,
    spawn_seeds,
)
from .synth_conf import META_FILE, OBSERVATION_FILE, TRUTH_S_FILE, TRUTH_T_FILE


@dataclass
class Instance:
    observation: np.ndarray
    truth_t: Optional[np.ndarray] = None
    truth_s: Optional[SparseTensor] = None
    meta: dict = field(default_factory=dict)

    @property
    def shape(self):
        return self.observation.shape

    @property
    def has_truth(self):
        return self.truth_t is not None

    @property
    def truth(self):
        return (self.truth_t, self.truth_s) if self.has_truth else None

    def observation_digest(self):
        return hashlib.sha256(dumps_lrst(self.observation)).hexdigest()

    def save(self, directory, force=False):
        directory = prepare_output_dir(directory, force)
        payload = dumps_lrst(self.observation)
        meta = dict(self.meta)
        meta["observation_sha256"] = hashlib.sha256(payload).hexdigest()
        atomic_write_bytes(directory / OBSERVATION_FILE, payload)
        if self.truth_t is not None:
            atomic_write_bytes(directory / TRUTH_T_FILE, dumps_lrst(self.truth_t))
        if self.truth_s is not None:
            save_sparse_csv(directory / TRUTH_S_FILE, self.truth_s)
        atomic_write_text(directory / META_FILE, canonical_yaml(meta))
        self.meta = meta
        return directory

    @classmethod
    def load(cls, directory):
        """
        Read an instance directory. Truth files and metadata are optional.
        """
        directory = Path(directory)
        observation = load_lrst(directory / OBSERVATION_FILE)
        truth_t = truth_s = None
        if (directory / TRUTH_T_FILE).exists():
            truth_t = load_lrst(directory / TRUTH_T_FILE)
            if truth_t.shape != observation.shape:
                raise FormatError("truth_T shape differs from the observation shape")
        if (directory / TRUTH_S_FILE).exists():
            truth_s = load_sparse_csv(directory / TRUTH_S_FILE, observation.shape)
        meta = {}
        if (directory / META_FILE).exists():
            meta = yaml.safe_load((directory / META_FILE).read_text("utf-8")) or {}
        return cls(observation, truth_t, truth_s, meta)


def _meta(config, seed, truth_s):
    noise = config.noise
    meta = {
        "lrstensor_version": __version__,
        "seed": int(seed),
        "model": config.model.value,
        "dims": list(config.dims),
        "rank": [int(r) for r in np.broadcast_to(config.rank, len(config.dims))],
        "alpha": float(config.alpha),
        "realized_alpha": truth_s.slice_sparsity(),
        "amp": float(config.amp),
        "sparse_law": config.sparse_law.value,
        "sparse_linf": config.sparse_linf,
        "lambda_min": config.lambda_min,
        "lambda_max": config.lambda_max,
        "linf": config.linf,
    }
    if config.model is LossKind.GAUSSIAN:
        meta["noise"] = {
            "kind": noise.kind.value,
            "sigma": float(noise.sigma),
            "df": noise.df,
            "scale": float(noise.scale),
        }
        if noise.kind is NoiseKind.GAUSSIAN or noise.df > 2:
            meta["noise"]["effective_sigma"] = float(noise.std())
    elif config.model is LossKind.BERNOULLI:
        meta["link"] = config.link.kind.value
        meta["link_sigma"] = config.link.sigma
    else:
        meta["intensity"] = float(config.intensity)
    return meta


def generate_instance(config, seed):
    """
    Draw one instance of ``config.model``:

    - gaussian: ``A = T* + S* + noise`` with ``amp * Be(alpha) * N(0, 1)``
      outliers (or constant ones);
    - bernoulli: ``A ~ Bernoulli(p(T* + S*))``;
    - poisson: ``Y ~ Poisson(I exp(T* + S*))``.
    """
    lowrank_seed, sparse_seed, obs_seed = spawn_seeds(seed, 3)
    truth_t = gen_lowrank(
        config.dims,
        config.rank,
        lowrank_seed,
        config.lambda_min,
        config.lambda_max,
        config.linf,
    )
    truth_s = gen_sparse(
        config.dims,
        config.alpha,
        config.amp,
        sparse_seed,
        config.sparse_law,
        config.sparse_linf,
    )
    signal = truth_t + truth_s.to_dense()
    if config.model is LossKind.GAUSSIAN:
        observation = add_noise(signal, config.noise, obs_seed)
    elif config.model is LossKind.BERNOULLI:
        observation = sample_bernoulli(signal, config.link, obs_seed)
    else:
        observation = sample_poisson(signal, config.intensity, obs_seed)
    return Instance(observation, truth_t, truth_s, _meta(config, seed, truth_s))


def instance_config_from_meta(meta):
    """Rebuild the generator parameters recorded in ``meta``."""
    noise = meta.get("noise") or {}
    return InstanceConfig(
        dims=tuple(meta["dims"]),
        rank=tuple(meta["rank"]),
        model=meta["model"],
        alpha=meta["alpha"],
        amp=meta["amp"],
        sparse_law=meta["sparse_law"],
        sparse_linf=meta.get("sparse_linf"),
        noise=NoiseLaw(
            noise.get("kind", "gaussian"),
            noise.get("sigma", 0.0),
            noise.get("df"),
            noise.get("scale", 1.0),
        ),
        lambda_min=meta.get("lambda_min"),
        lambda_max=meta.get("lambda_max"),
        linf=meta.get("linf"),
        link=LinkFunction(meta.get("link", "logistic"), meta.get("link_sigma", 1.0)),
        intensity=meta.get("intensity", 1.0),
    )

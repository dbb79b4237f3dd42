from .config import InstanceConfig, NoiseKind, NoiseLaw, SparseLaw
from .generators import (
    add_noise,
    gen_lowrank,
    gen_lowrank_tucker,
    gen_sparse,
    noise_tensor,
    rng_from,
    sample_bernoulli,
    sample_poisson,
    spawn_seeds,
    split_heavy_tail,
)
from .instance import Instance, generate_instance, instance_config_from_meta

__all__ = [
    "Instance",
    "InstanceConfig",
    "NoiseKind",
    "NoiseLaw",
    "SparseLaw",
    "add_noise",
    "gen_lowrank",
    "gen_lowrank_tucker",
    "gen_sparse",
    "generate_instance",
    "instance_config_from_meta",
    "noise_tensor",
    "rng_from",
    "sample_bernoulli",
    "sample_poisson",
    "spawn_seeds",
    "split_heavy_tail",
]

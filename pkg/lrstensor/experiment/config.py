import math
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

import yaml

from ..errors import ConfigError
from ..init import InitConfig
from ..init.init_conf import DEFAULT_FW_ITERS, DEFAULT_T_MAX
from ..losses import LinkFunction, LinkKind, LossKind
from ..solver import SolverConfig, SolverKind
from ..solver.solver_conf import DEFAULT_GAMMA, DEFAULT_L_MAX, DEFAULT_REL_TOL
from ..synth import InstanceConfig, NoiseKind, NoiseLaw, SparseLaw
from ..utils import digest, parse_float, parse_float_list, parse_int_list
from .experiment_conf import SPEC_KEYS

_INT_LISTS = ("dims", "rank", "seeds")
_FLOATS = (
    "alpha",
    "true_alpha",
    "gamma",
    "mu1",
    "beta",
    "k_pr",
    "zeta",
    "rel_tol",
    "sigma",
    "df",
    "amp",
    "sparse_linf",
    "linf",
    "lambda_min",
    "lambda_max",
    "link_sigma",
    "intensity",
    "delta_star",
)
_INTS = ("l_max", "t_max", "fw_iters")
_ENUMS = {
    "model": LossKind,
    "noise": NoiseKind,
    "sparse_law": SparseLaw,
    "link": LinkKind,
    "solver": SolverKind,
}


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One experiment as read from a flat YAML mapping.

    ``alpha`` is the solver's sparsity level, ``true_alpha`` the generator's
    (defaults to ``alpha``). ``sigma`` is the gaussian noise level, or the
    scale of the student_t draws when ``noise: student_t``.
    """

    model: LossKind = LossKind.GAUSSIAN
    dims: Optional[Tuple[int, ...]] = None
    rank: Optional[Tuple[int, ...]] = None
    alpha: float = 0.0
    true_alpha: Optional[float] = None
    gamma: float = DEFAULT_GAMMA
    mu1: Optional[float] = None
    beta: Optional[float] = None
    k_pr: Optional[float] = None
    zeta: Optional[float] = None
    l_max: int = DEFAULT_L_MAX
    rel_tol: float = DEFAULT_REL_TOL
    noise: NoiseKind = NoiseKind.GAUSSIAN
    sigma: float = 0.0
    df: Optional[float] = None
    amp: float = 1.0
    sparse_law: SparseLaw = SparseLaw.GAUSSIAN
    sparse_linf: Optional[float] = None
    linf: Optional[float] = None
    lambda_min: Optional[float] = None
    lambda_max: Optional[float] = None
    link: LinkKind = LinkKind.LOGISTIC
    link_sigma: float = 1.0
    intensity: float = 1.0
    seeds: Tuple[int, ...] = (0,)
    solver: SolverKind = SolverKind.RGRAD_SPARSE
    t_max: int = DEFAULT_T_MAX
    fw_iters: int = DEFAULT_FW_ITERS
    delta_star: Optional[float] = None
    escalate: bool = False
    out: Optional[str] = None

    def __post_init__(self):
        # builds every derived config once so a bad spec fails before any run
        if self.rank is not None:
            self.solver_config()
        if self.dims is not None and self.rank is not None:
            self.instance_config()
        self.init_config()
        self.link_function()

    @classmethod
    def from_mapping(cls, data):
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("experiment spec must be a mapping of key: value lines")
        unknown = sorted(set(data) - set(SPEC_KEYS))
        if unknown:
            raise ConfigError(f"unknown spec keys: {', '.join(map(str, unknown))}")
        values = {}
        for key, raw in data.items():
            if raw is None:
                continue
            if isinstance(raw, (dict, list)) and key not in _INT_LISTS:
                raise ConfigError(f"{key}: nested values are not allowed")
            values[key] = _parse_value(key, raw)
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: not a valid spec file ({e})") from e
        return cls.from_mapping(data)

    def to_mapping(self):
        """Plain-typed mapping of every key, the input of :meth:`digest`."""
        mapping = {}
        for key, value in asdict(self).items():
            if isinstance(value, Enum):
                value = value.value
            elif isinstance(value, tuple):
                value = list(value)
            mapping[key] = value
        return mapping

    def digest(self):
        return digest(self.to_mapping())

    def require(self, *keys):
        missing = [key for key in keys if getattr(self, key) is None]
        if missing:
            raise ConfigError(f"spec is missing: {', '.join(missing)}")

    def link_function(self):
        return LinkFunction(self.link, self.link_sigma)

    def noise_law(self):
        if self.noise is NoiseKind.GAUSSIAN:
            return NoiseLaw(NoiseKind.GAUSSIAN, sigma=self.sigma)
        return NoiseLaw(NoiseKind.STUDENT_T, df=self.df, scale=self.sigma)

    def instance_config(self):
        self.require("dims", "rank")
        return InstanceConfig(
            dims=self.dims,
            rank=_scalar_rank(self.rank),
            model=self.model,
            alpha=self.alpha if self.true_alpha is None else self.true_alpha,
            amp=self.amp,
            sparse_law=self.sparse_law,
            sparse_linf=self.sparse_linf,
            noise=self.noise_law(),
            lambda_min=self.lambda_min,
            lambda_max=self.lambda_max,
            linf=self.linf,
            link=self.link_function(),
            intensity=self.intensity,
        )

    def solver_config(self, rank=None, alpha=None):
        rank = rank if rank is not None else self.rank
        if rank is None:
            raise ConfigError("spec is missing: rank")
        return SolverConfig(
            rank=_scalar_rank(rank),
            alpha=self.alpha if alpha is None else alpha,
            gamma=self.gamma,
            mu1=self.mu1,
            beta=self.beta,
            k_pr=self.k_pr,
            zeta=self.zeta,
            l_max=self.l_max,
            rel_tol=self.rel_tol,
        )

    def init_config(self):
        # an infinite trim level leaves the binary start at its default radius
        zeta = self.zeta if self.zeta is not None and math.isfinite(self.zeta) else None
        return InitConfig(
            rank=None if self.rank is None else _scalar_rank(self.rank),
            mu1=self.mu1,
            t_max=self.t_max,
            fw_iters=self.fw_iters,
            zeta=zeta,
        )


def _scalar_rank(rank):
    return rank[0] if len(rank) == 1 else tuple(rank)


def _parse_value(key, raw):
    try:
        if key in _INT_LISTS:
            return parse_int_list(raw, key)
        if key in _FLOATS:
            return parse_float(raw)
        if key in _INTS:
            value = parse_float(raw)
            if value != int(value):
                raise ValueError(raw)
            return int(value)
        if key in _ENUMS:
            return _ENUMS[key](str(raw).lower())
        if key == "escalate":
            if not isinstance(raw, bool):
                raise ValueError(raw)
            return raw
        if key == "out":
            return str(raw)
    except (TypeError, ValueError, OverflowError) as e:
        raise ConfigError(f"{key}: invalid value {raw!r}") from e
    raise ConfigError(f"unknown spec key {key}")


def parse_rank_grid(text):
    """``"2,2,2;3,3,3"`` into a list of rank tuples."""
    cells = [cell for cell in str(text).replace(" ", "").split(";") if cell]
    if not cells:
        raise ConfigError(f"rank grid: empty grid {text!r}")
    return [parse_int_list(cell, "rank grid") for cell in cells]


def parse_alpha_grid(text):
    alphas = parse_float_list(text, "alpha grid")
    for alpha in alphas:
        if not 0.0 <= alpha <= 1.0:
            raise ConfigError(f"alpha grid: {alpha} outside [0, 1]")
    return list(alphas)

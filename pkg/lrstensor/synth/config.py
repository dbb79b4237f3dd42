import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

from ..errors import ConfigError
from ..losses import LinkFunction, LossKind


class NoiseKind(Enum):
    GAUSSIAN = "gaussian"
    STUDENT_T = "student_t"


class SparseLaw(Enum):
    GAUSSIAN = "gaussian"
    CONSTANT = "constant"


@dataclass(frozen=True)
class NoiseLaw:
    """
    Additive noise: ``sigma * N(0, 1)`` or ``scale * t(df)``.
    """

    kind: NoiseKind = NoiseKind.GAUSSIAN
    sigma: float = 0.0
    df: Optional[float] = None
    scale: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", NoiseKind(self.kind))
        except ValueError as e:
            raise ConfigError(f"unknown noise law {self.kind!r}") from e
        if not self.sigma >= 0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        if self.kind is NoiseKind.STUDENT_T:
            if self.df is None or not self.df > 0:
                raise ConfigError(f"student_t noise needs df > 0, got {self.df}")
            if not self.scale >= 0:
                raise ConfigError(f"scale must be >= 0, got {self.scale}")

    @property
    def is_zero(self):
        if self.kind is NoiseKind.GAUSSIAN:
            return self.sigma == 0.0
        return self.scale == 0.0

    def std(self):
        """Standard deviation of one draw; needs ``df > 2`` for student_t."""
        if self.kind is NoiseKind.GAUSSIAN:
            return self.sigma
        if not self.df > 2:
            raise ConfigError(f"student_t variance is infinite for df={self.df}")
        return self.scale * math.sqrt(self.df / (self.df - 2.0))


@dataclass(frozen=True)
class InstanceConfig:
    """Parameters of one synthetic instance; the seed is passed separately."""

    dims: Tuple[int, ...]
    rank: Union[int, Tuple[int, ...]]
    model: LossKind = LossKind.GAUSSIAN
    alpha: float = 0.0
    amp: float = 1.0
    sparse_law: SparseLaw = SparseLaw.GAUSSIAN
    sparse_linf: Optional[float] = None
    noise: NoiseLaw = field(default_factory=NoiseLaw)
    lambda_min: Optional[float] = None
    lambda_max: Optional[float] = None
    linf: Optional[float] = None
    link: LinkFunction = field(default_factory=LinkFunction)
    intensity: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "model", LossKind(self.model))
            object.__setattr__(self, "sparse_law", SparseLaw(self.sparse_law))
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.linf is not None and (
            self.lambda_min is not None or self.lambda_max is not None
        ):
            raise ConfigError("give either an l-infinity target or spectrum targets")
        if not self.intensity > 0:
            raise ConfigError(f"intensity must be positive, got {self.intensity}")

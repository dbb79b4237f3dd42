from dataclasses import dataclass
from typing import Optional, Tuple, Union

from ..errors import ConfigError
from .init_conf import DEFAULT_FW_ITERS, DEFAULT_T_MAX


@dataclass(frozen=True)
class InitConfig:
    """
    Warm-start parameters. ``mu1`` defaults to ``2^m + log d_max``; ``zeta``
    (binary programs only) defaults to the link scale.
    """

    rank: Optional[Union[int, Tuple[int, ...]]] = None
    mu1: Optional[float] = None
    t_max: int = DEFAULT_T_MAX
    fw_iters: int = DEFAULT_FW_ITERS
    zeta: Optional[float] = None

    def __post_init__(self):
        if int(self.t_max) != self.t_max or self.t_max < 1:
            raise ConfigError(f"t_max must be a positive integer, got {self.t_max}")
        if int(self.fw_iters) != self.fw_iters or self.fw_iters < 0:
            raise ConfigError(
                f"fw_iters must be a non-negative integer, got {self.fw_iters}"
            )
        if self.mu1 is not None and not self.mu1 >= 1:
            raise ConfigError(f"mu1 must be >= 1, got {self.mu1}")
        if self.zeta is not None and not 0 < self.zeta < float("inf"):
            raise ConfigError(f"zeta must be positive and finite, got {self.zeta}")

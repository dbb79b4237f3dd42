import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from ..core import check_rank
from ..errors import ConfigError
from ..losses import LossKind
from ..utils import default_mu1, warn
from .solver_conf import (
    BETA_WINDOW,
    DEFAULT_BETA,
    DEFAULT_GAMMA,
    DEFAULT_L_MAX,
    DEFAULT_REL_TOL,
)


class SolverKind(Enum):
    RGRAD_SPARSE = "rgrad_sparse"
    RGRAD_LOWRANK = "rgrad_lowrank"
    PGD = "pgd"


class Termination(Enum):
    TOLERANCE = "tolerance"
    MAX_ITER = "max_iter"
    NUMERICAL_FAILURE = "numerical_failure"

    @property
    def exit_code(self):
        return {"tolerance": 0, "max_iter": 2, "numerical_failure": 3}[self.value]


@dataclass(frozen=True)
class SolverConfig:
    """
    Tuning parameters of the iterations. ``None`` fields are filled in by
    :meth:`resolved` from the model and the starting point.
    """

    rank: Union[int, Tuple[int, ...]]
    alpha: float = 0.0
    gamma: float = DEFAULT_GAMMA
    mu1: Optional[float] = None
    beta: Optional[float] = None
    k_pr: Optional[float] = None
    zeta: Optional[float] = None
    l_max: int = DEFAULT_L_MAX
    rel_tol: float = DEFAULT_REL_TOL
    theory_checks: bool = False

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not self.gamma >= 1.0:
            raise ConfigError(f"gamma must be >= 1, got {self.gamma}")
        if self.gamma * self.alpha > 1.0 + 1e-12:
            raise ConfigError(
                f"gamma * alpha = {self.gamma * self.alpha} exceeds 1; "
                "lower alpha or gamma"
            )
        for name in ("mu1", "beta", "k_pr", "zeta"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.beta is not None and math.isinf(self.beta):
            raise ConfigError("beta must be finite")
        if int(self.l_max) != self.l_max or self.l_max < 0:
            raise ConfigError(f"l_max must be a non-negative integer, got {self.l_max}")
        if not self.rel_tol >= 0:
            raise ConfigError(f"rel_tol must be >= 0, got {self.rel_tol}")

    @property
    def alpha_eff(self):
        return min(self.gamma * self.alpha, 1.0) if self.alpha else 0.0

    def resolved(self, model, init):
        """
        Concrete copy: ``zeta`` defaults to the sup norm of the start (1.0 for
        a zero start), ``mu1`` to ``2^m + log d_max``, ``k_pr`` to the model's
        default and ``beta`` to 0.3 (gaussian) or ``0.3 b_l / b_u^2``.
        """
        rank = check_rank(model.shape, self.rank)
        zeta = self.zeta
        if zeta is None:
            zeta = float(np.abs(init.to_dense()).max()) or 1.0
        mu1 = self.mu1 if self.mu1 is not None else default_mu1(model.shape)
        k_pr = self.k_pr if self.k_pr is not None else model.default_k_pr(zeta)
        beta = self.beta
        if beta is None:
            if model.kind is LossKind.GAUSSIAN:
                beta = DEFAULT_BETA
            else:
                b_l, b_u = model.curvature_bounds(zeta)
                if not b_l > 0:
                    raise ConfigError(f"degenerate curvature bounds at zeta={zeta}")
                beta = DEFAULT_BETA * b_l / b_u**2
        return replace(
            self, rank=rank, zeta=zeta, mu1=mu1, k_pr=k_pr, beta=float(beta)
        )

    def step_size_window(self, model):
        """
        Admissible step sizes: ``[0.005, 0.36]`` for the gaussian model, scaled
        by ``b_l / b_u^2`` at ``zeta`` otherwise.
        """
        low, high = BETA_WINDOW
        if model.kind is LossKind.GAUSSIAN:
            return low, high
        b_l, b_u = model.curvature_bounds(self.zeta)
        scale = b_l / b_u**2
        return low * scale, high * scale

    def step_size_warnings(self, model):
        """
        Messages for a step size outside the admissible window; raises instead
        when ``theory_checks`` is on. Expects a resolved config.
        """
        if self.beta is None or self.zeta is None:
            return []
        low, high = self.step_size_window(model)
        if low <= self.beta <= high:
            return []
        message = f"beta={self.beta} outside the admissible window [{low}, {high}]"
        if self.theory_checks:
            raise ConfigError(message)
        warn(message)
        return [message]

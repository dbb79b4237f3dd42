"""Entrywise losses ``L(X) = sum_w l_w(X_w)`` of the observation models."""

import math
from abc import ABC, abstractmethod

import numpy as np

from ..core import as_dense
from ..errors import NonFiniteError, ShapeMismatchError


class LossModel(ABC):
    """
    Base class of the observation models. Subclasses provide the elementwise
    loss, its first and second derivatives and the root of the derivative as
    vectorized functions of ``(x, observation)``.
    """

    kind = None

    def __init__(self, observation):
        self._observation = as_dense(observation, "observation")
        self._observation.setflags(write=False)

    @property
    def observation(self):
        return self._observation

    @property
    def shape(self):
        return self._observation.shape

    @abstractmethod
    def _loss(self, x, obs):
        pass

    @abstractmethod
    def _derivative(self, x, obs):
        pass

    @abstractmethod
    def _second(self, x, obs):
        pass

    @abstractmethod
    def _root(self, obs):
        pass

    @abstractmethod
    def curvature_bounds(self, zeta):
        """``(b_l, b_u)``: extreme second derivatives over ``|x| <= zeta``."""

    @abstractmethod
    def default_k_pr(self, zeta):
        pass

    @abstractmethod
    def deviance(self, x):
        """``-2 log`` likelihood at ``x`` up to model constants."""

    def _check(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != self.shape:
            raise ShapeMismatchError(
                f"tensor of shape {x.shape} evaluated against observations "
                f"of shape {self.shape}"
            )
        return x

    def _entry(self, omega):
        omega = tuple(int(i) for i in omega)
        if len(omega) != len(self.shape) or any(
            not 0 <= i < d for i, d in zip(omega, self.shape)
        ):
            raise ShapeMismatchError(f"multi-index {omega} outside shape {self.shape}")
        return self._observation[omega]

    def value(self, x):
        total = float(np.sum(self._loss(self._check(x), self._observation)))
        if not math.isfinite(total):
            raise NonFiniteError(f"{self.kind.value} loss is not finite")
        return total

    def gradient(self, x):
        grad = self._derivative(self._check(x), self._observation)
        if not np.all(np.isfinite(grad)):
            raise NonFiniteError(f"{self.kind.value} gradient has non-finite entries")
        return grad

    def second_derivative(self, x):
        return self._second(self._check(x), self._observation)

    def entry_value(self, omega, v):
        return float(self._loss(np.float64(v), self._entry(omega)))

    def entry_gradient(self, omega, v):
        return float(self._derivative(np.float64(v), self._entry(omega)))

    def roots(self):
        """Per-entry root of the derivative, finite because targets are clamped."""
        return self._root(self._observation)

    def prune_values(self, t, mask, k_pr):
        """
        ``s = clip(root, -k_pr, k_pr) - t`` on the entries selected by ``mask``.
        The derivatives are monotone, so this minimizes ``|l'(t + s)|`` over
        ``|t + s| <= k_pr``.
        """
        t = self._check(t)
        roots = self._root(self._observation[mask])
        return np.clip(roots, -k_pr, k_pr) - t[mask]

    def entry_prune(self, omega, t, k_pr):
        root = float(self._root(np.asarray(self._entry(omega))))
        return min(max(root, -k_pr), k_pr) - float(t)


def loss_value(model, x):
    return model.value(x)


def gradient(model, x):
    return model.gradient(x)


def entry_gradient(model, omega, v):
    return model.entry_gradient(omega, v)


def entry_prune(model, omega, t, k_pr):
    return model.entry_prune(omega, t, k_pr)

"""Parametric source distributions for the simulators and the closed-form
plateau levels in :mod:`mfcpd.matched_filter`."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

__all__ = ["Gaussian1D", "GaussianND", "Uniform1D", "Mixture"]


@dataclass(frozen=True)
class Gaussian1D:
    mean: float = 0.0
    var: float = 1.0

    def __post_init__(self) -> None:
        if self.var <= 0:
            raise ValueError(f"variance must be positive, got {self.var}")

    @property
    def dim(self) -> int:
        return 1

    @property
    def std(self) -> float:
        return math.sqrt(self.var)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.normal(self.mean, self.std, size)

    def cdf(self, x):
        return special.ndtr((np.asarray(x, dtype=float) - self.mean) / self.std)

    def ppf(self, u):
        return self.mean + self.std * special.ndtri(np.asarray(u, dtype=float))

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.std
        return np.exp(-0.5 * z * z) / (self.std * math.sqrt(2.0 * math.pi))

    def support(self) -> tuple[float, float]:
        # wide enough that the CDF tails are numerically 0 and 1
        return (self.mean - 12.0 * self.std, self.mean + 12.0 * self.std)


@dataclass(frozen=True)
class Uniform1D:
    low: float = 0.0
    high: float = 1.0

    def __post_init__(self) -> None:
        if not self.low < self.high:
            raise ValueError(f"need low < high, got [{self.low}, {self.high}]")

    @property
    def dim(self) -> int:
        return 1

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.low, self.high, size)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self.low) / (self.high - self.low), 0.0, 1.0)

    def ppf(self, u):
        return self.low + np.asarray(u, dtype=float) * (self.high - self.low)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.low) & (x <= self.high)
        return np.where(inside, 1.0 / (self.high - self.low), 0.0)

    def support(self) -> tuple[float, float]:
        return (self.low, self.high)


@dataclass(frozen=True, eq=False)
class GaussianND:
    mean: np.ndarray = field(default_factory=lambda: np.zeros(2))
    cov: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self) -> None:
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.atleast_2d(np.asarray(self.cov, dtype=float))
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"covariance shape {cov.shape} does not match mean size {mean.size}")
        if not np.allclose(cov, cov.T):
            raise ValueError("covariance must be symmetric")
        # raises LinAlgError if not positive definite
        np.linalg.cholesky(cov)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return self.mean.size

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.multivariate_normal(self.mean, self.cov, size, method="cholesky")

    def project(self, direction) -> Gaussian1D:
        """Law of the one-dimensional projection <direction, X>."""
        theta = np.asarray(direction, dtype=float)
        return Gaussian1D(
            mean=float(theta @ self.mean),
            var=float(theta @ self.cov @ theta),
        )


@dataclass(frozen=True)
class Mixture:
    """Two-component mixture drawing from ``p`` with probability ``weight``."""

    weight: float
    p: object
    q: object

    def __post_init__(self) -> None:
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"mixture weight must lie in [0, 1], got {self.weight}")
        if self.p.dim != self.q.dim:
            raise ValueError("mixture components must share a dimension")

    @property
    def dim(self) -> int:
        return self.p.dim

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        take_p = rng.random(size) < self.weight
        a = self.p.sample(rng, size)
        b = self.q.sample(rng, size)
        if a.ndim == 2:
            return np.where(take_p[:, None], a, b)
        return np.where(take_p, a, b)

    def cdf(self, x):
        return self.weight * self.p.cdf(x) + (1.0 - self.weight) * self.q.cdf(x)

    def pdf(self, x):
        return self.weight * self.p.pdf(x) + (1.0 - self.weight) * self.q.pdf(x)

    def support(self) -> tuple[float, float]:
        lo_p, hi_p = self.p.support()
        lo_q, hi_q = self.q.support()
        return (min(lo_p, lo_q), max(hi_p, hi_q))

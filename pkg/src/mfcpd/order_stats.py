"""Order-statistic primitives shared by all the two-sample tests.

A window of draws is wrapped in a :class:`SampleSet`, which caches the
ascending sort so that every statistic evaluated on the same window reuses
one O(n log n) pass.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SampleSet", "edf_eval", "quantile", "qq_knots"]


class SampleSet:
    """One window of scalar draws plus its cached ascending sort."""

    __slots__ = ("values", "sorted_values")

    def __init__(self, values) -> None:
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1:
            raise ValueError(f"SampleSet expects a 1-d array, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("SampleSet cannot be empty")
        self.values = arr
        self.sorted_values = np.sort(arr)

    @property
    def size(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"SampleSet(n={self.size})"


def edf_eval(s: SampleSet, x: float) -> float:
    """Empirical distribution function of the sample at ``x``.

    Right-continuous: returns the fraction of draws less than or equal
    to ``x``.
    """
    return float(np.searchsorted(s.sorted_values, x, side="right")) / s.size


def quantile(s: SampleSet, u: float) -> float:
    """Generalized inverse of the empirical distribution function.

    Returns the smallest order statistic whose EDF value reaches ``u``,
    i.e. inf{y : edf(y) >= u}. The comparison is done against the exact
    floating-point grid k/n so that quantile(s, k/n) recovers the k-th
    order statistic without round-off surprises.
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"quantile level must lie in [0, 1], got {u}")
    grid = np.arange(1, s.size + 1) / s.size
    j = int(np.searchsorted(grid, u, side="left"))
    return float(s.sorted_values[j])


def qq_knots(f: SampleSet, g: SampleSet) -> np.ndarray:
    """Evaluate one sample's EDF at the other sample's order statistics.

    Entry k (0-based) is F_n(g_(k+1)): the fraction of ``f`` draws at or
    below the (k+1)-th smallest draw of ``g``. These are the plateau
    heights of the staircase x -> F_n(G_m^{-1}(x)) on the cells
    ((k)/m, (k+1)/m], and every quantile-transform statistic reduces to
    arithmetic on them.

    Returns
    -------
    np.ndarray
        Nondecreasing vector of length ``g.size`` with values in [0, 1].
    """
    counts = np.searchsorted(f.sorted_values, g.sorted_values, side="right")
    return counts / f.size

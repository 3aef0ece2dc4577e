"""Sliding-window statistic series and the peak logic that turns them
into change point estimates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matched_filter import apply_filter, build_filter
from .timeseries import TimeSeries
from .two_sample_tests import (
    StatKind,
    TestKind,
    WindowPair,
    compute_statistic,
    sample_projections,
)

__all__ = [
    "SequenceTooShortError",
    "StatisticSeries",
    "ChangePointSet",
    "DetectionConfig",
    "PipelineResult",
    "statistic_series",
    "detect_peaks",
    "dedupe_peaks",
    "run_pipeline",
]


class SequenceTooShortError(ValueError):
    """The sequence cannot hold even one pair of windows."""


@dataclass(frozen=True, eq=False)
class StatisticSeries:
    """Statistic values over all window split points of one sequence.

    Entry ``i`` belongs to split time ``window_size + i``: the left
    window covers the ``window_size`` rows before that time, the right
    window the ``window_size`` rows from it onward.
    """

    values: np.ndarray
    window_size: int
    test: TestKind
    filtered: bool = False

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("statistic series must be a nonempty 1-d array")
        object.__setattr__(self, "values", values)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.values.size) + self.window_size


@dataclass(frozen=True, eq=False)
class ChangePointSet:
    """Detected change times with their peak scores, ordered by time."""

    times: np.ndarray
    scores: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=int)
        scores = np.asarray(self.scores, dtype=float)
        if times.shape != scores.shape or times.ndim != 1:
            raise ValueError("times and scores must be matching 1-d arrays")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return self.times.size

    def as_pairs(self) -> list[tuple[int, float]]:
        return [(int(t), float(s)) for t, s in zip(self.times, self.scores)]


@dataclass(frozen=True)
class DetectionConfig:
    """Knobs of one detection run.

    ``dedupe_distance`` only matters when ``use_filter`` is off; the
    smoothed pipeline relies on the filter itself to merge nearby peaks.
    """

    window: int
    threshold: float
    use_filter: bool = True
    dedupe_distance: int = 0

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"window size must be at least 1, got {self.window}")
        if self.dedupe_distance < 0:
            raise ValueError(f"dedupe distance cannot be negative, got {self.dedupe_distance}")


@dataclass(frozen=True, eq=False)
class PipelineResult:
    raw: StatisticSeries
    processed: StatisticSeries
    change_points: ChangePointSet


def statistic_series(x, n: int, test: TestKind) -> StatisticSeries:
    """Evaluate the statistic at every valid window split of a sequence.

    Valid split times run from ``n`` to ``T - n`` inclusive, so the
    result has ``T - 2n + 1`` entries and needs ``T >= 2n``. For the
    sliced statistic the projection directions are drawn once and shared
    by every split.
    """
    values = x.values if isinstance(x, TimeSeries) else np.asarray(x, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    if n < 1:
        raise ValueError(f"window size must be at least 1, got {n}")
    T = values.shape[0]
    if T < 2 * n:
        raise SequenceTooShortError(
            f"need at least {2 * n} rows for window size {n}, got {T}"
        )
    projections = None
    if test.kind is StatKind.SWQT:
        projections = sample_projections(
            values.shape[1], test.num_projections, test.projection_seed
        )
    out = np.empty(T - 2 * n + 1)
    for i, t in enumerate(range(n, T - n + 1)):
        pair = WindowPair(values[t - n : t], values[t : t + n])
        out[i] = compute_statistic(pair, test, projections)
    return StatisticSeries(values=out, window_size=n, test=test)


def detect_peaks(series: StatisticSeries, threshold: float) -> ChangePointSet:
    """Strict local maxima of the series that clear the threshold.

    Neighbours beyond the ends never win a comparison (they are treated
    as -inf), so an endpoint only has to beat its single inner
    neighbour.
    """
    v = series.values
    left = np.empty_like(v)
    left[0] = -np.inf
    left[1:] = v[:-1]
    right = np.empty_like(v)
    right[-1] = -np.inf
    right[:-1] = v[1:]
    idx = np.flatnonzero((v > threshold) & (v > left) & (v > right))
    return ChangePointSet(times=idx + series.window_size, scores=v[idx])


def dedupe_peaks(peaks: ChangePointSet, min_distance: int) -> ChangePointSet:
    """Greedy score-first thinning of nearby peaks.

    Peaks are visited from highest score to lowest (ties go to the
    earlier time) and kept only when every already kept peak is more
    than ``min_distance`` steps away.
    """
    if min_distance < 0:
        raise ValueError(f"min_distance cannot be negative, got {min_distance}")
    order = np.lexsort((peaks.times, -peaks.scores))
    kept: list[int] = []
    for i in order:
        t = int(peaks.times[i])
        if all(abs(t - u) > min_distance for u in kept):
            kept.append(t)
    kept_idx = np.flatnonzero(np.isin(peaks.times, kept))
    return ChangePointSet(times=peaks.times[kept_idx], scores=peaks.scores[kept_idx])


def run_pipeline(x, config: DetectionConfig, test: TestKind) -> PipelineResult:
    """Statistic series, optional matched filtering, and peak picking.

    With the filter on, peaks of the smoothed series are reported as-is;
    with it off, peaks of the raw series are thinned by the greedy
    dedupe rule.
    """
    raw = statistic_series(x, config.window, test)
    if config.use_filter:
        processed = apply_filter(raw, build_filter(test, config.window))
        points = detect_peaks(processed, config.threshold)
    else:
        processed = raw
        points = dedupe_peaks(detect_peaks(raw, config.threshold), config.dedupe_distance)
    return PipelineResult(raw=raw, processed=processed, change_points=points)

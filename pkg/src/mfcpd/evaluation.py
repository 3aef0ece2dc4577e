"""Tolerance-window confusion counting, precision/recall/F1, and
threshold-swept PR curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detector import ChangePointSet, dedupe_peaks

__all__ = [
    "DegenerateEvalError",
    "EvalConfig",
    "ConfusionCounts",
    "PRCurve",
    "confusion",
    "pr_metrics",
    "sweep",
    "mean_per_sequence_metrics",
    "write_pr_csv",
    "pr_summary",
]

MATCH_MODES = ("independent", "one_to_one")


class DegenerateEvalError(ValueError):
    """Raised when a sweep is asked to score a dataset with no true
    change points anywhere: recall is undefined there."""


@dataclass(frozen=True)
class EvalConfig:
    """Match tolerance, in samples, for counting a detection as correct."""

    epsilon: int

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.epsilon}")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be nonnegative")

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


@dataclass(frozen=True, eq=False)
class PRCurve:
    """PR points swept over the detection threshold, highest first.

    ``best_counts`` holds the confusion counts at ``best_threshold``, the
    highest threshold attaining ``best_f1``.
    """

    thresholds: np.ndarray
    precisions: np.ndarray
    recalls: np.ndarray
    au_prc: float
    best_f1: float
    best_threshold: float
    best_counts: ConfusionCounts


def confusion(pred, truth, epsilon: int, mode: str = "independent") -> ConfusionCounts:
    """Count hits and misses with an ``epsilon``-sample tolerance window.

    The default mode scores each side independently: a prediction is a
    true positive when any truth lies within epsilon of it, and a truth
    is missed when no prediction does. Two predictions straddling one
    truth therefore both count as hits. The "one_to_one" mode instead
    pairs predictions and truths greedily by distance, so each truth can
    absorb at most one prediction.
    """
    if epsilon < 0:
        raise ValueError(f"tolerance must be nonnegative, got {epsilon}")
    if mode not in MATCH_MODES:
        raise ValueError(f"unknown match mode {mode!r}")
    pred_times = np.asarray(pred.times if hasattr(pred, "times") else pred, dtype=np.int64)
    truth_times = np.asarray(truth, dtype=np.int64)
    if pred_times.size == 0:
        return ConfusionCounts(0, 0, int(truth_times.size))
    if truth_times.size == 0:
        return ConfusionCounts(0, int(pred_times.size), 0)

    gaps = np.abs(pred_times[:, None] - truth_times[None, :])
    if mode == "independent":
        tp = int(np.count_nonzero(gaps.min(axis=1) <= epsilon))
        fp = int(pred_times.size) - tp
        fn = int(np.count_nonzero(gaps.min(axis=0) > epsilon))
        return ConfusionCounts(tp, fp, fn)

    pairs = [
        (int(gaps[i, j]), int(pred_times[i]), i, j)
        for i in range(pred_times.size)
        for j in range(truth_times.size)
        if gaps[i, j] <= epsilon
    ]
    pairs.sort()
    used_pred: set[int] = set()
    used_truth: set[int] = set()
    for _, _, i, j in pairs:
        if i in used_pred or j in used_truth:
            continue
        used_pred.add(i)
        used_truth.add(j)
    tp = len(used_pred)
    return ConfusionCounts(tp, int(pred_times.size) - tp, int(truth_times.size) - tp)


def pr_metrics(c: ConfusionCounts) -> tuple[float, float, float]:
    """Precision, recall, F1 with the empty-side conventions.

    No predictions counts as precision 1, no truths as recall 1, and F1
    is 0 when precision and recall are both 0.
    """
    precision = 1.0 if c.tp + c.fp == 0 else c.tp / (c.tp + c.fp)
    recall = 1.0 if c.tp + c.fn == 0 else c.tp / (c.tp + c.fn)
    f1 = 0.0 if precision + recall == 0 else 2.0 * precision * recall / (precision + recall)
    return precision, recall, f1


def _at_threshold(peaks: ChangePointSet, eta: float) -> ChangePointSet:
    keep = peaks.scores >= eta
    return ChangePointSet(peaks.times[keep], peaks.scores[keep])


def sweep(
    candidates,
    truths,
    epsilon: int,
    dedupe_distance: int | None = None,
    mode: str = "independent",
) -> PRCurve:
    """Sweep the detection threshold over every score in the dataset.

    ``candidates`` holds one ChangePointSet of candidate peaks per
    sequence and ``truths`` the matching label lists. Each swept
    threshold keeps the peaks scoring at least that much, which is the
    detection set that first admits the peak the threshold came from; a
    sentinel just above the top score contributes the empty-detection
    endpoint. With ``dedupe_distance`` set (the unfiltered pipeline),
    the surviving peaks are deduped anew at every threshold, so weak
    peaks never suppress strong ones.

    Confusion counts are pooled across the whole dataset before the
    metrics are computed. The area under the curve is the trapezoid rule
    over the recall-sorted points, anchored at recall 0 with the
    sentinel's precision.
    """
    candidates = list(candidates)
    truths = [np.asarray(t, dtype=np.int64) for t in truths]
    if len(candidates) != len(truths):
        raise ValueError(
            f"got {len(candidates)} candidate sets but {len(truths)} truth lists"
        )
    if all(t.size == 0 for t in truths):
        raise DegenerateEvalError("no true change points anywhere in the dataset")

    all_scores = np.concatenate([c.scores for c in candidates]) if candidates else np.array([])
    if all_scores.size:
        distinct = np.unique(all_scores)[::-1]
        sentinel = np.nextafter(distinct[0], np.inf)
    else:
        distinct = np.array([])
        sentinel = 0.0
    thresholds = np.concatenate([[sentinel], distinct])

    precisions = np.empty(thresholds.size)
    recalls = np.empty(thresholds.size)
    f1s = np.empty(thresholds.size)
    counts = []
    for k, eta in enumerate(thresholds):
        total = ConfusionCounts()
        for peaks, truth in zip(candidates, truths):
            kept = _at_threshold(peaks, eta)
            if dedupe_distance is not None:
                kept = dedupe_peaks(kept, dedupe_distance)
            total = total + confusion(kept, truth, epsilon, mode)
        precisions[k], recalls[k], f1s[k] = pr_metrics(total)
        counts.append(total)

    by_recall = np.argsort(np.concatenate([[0.0], recalls]), kind="stable")
    area = float(
        np.trapezoid(
            np.concatenate([[precisions[0]], precisions])[by_recall],
            np.concatenate([[0.0], recalls])[by_recall],
        )
    )
    best = int(np.argmax(f1s))
    return PRCurve(
        thresholds=thresholds,
        precisions=precisions,
        recalls=recalls,
        au_prc=area,
        best_f1=float(f1s[best]),
        best_threshold=float(thresholds[best]),
        best_counts=counts[best],
    )


def mean_per_sequence_metrics(
    candidates,
    truths,
    epsilon: int,
    dedupe_distance: int | None = None,
    mode: str = "independent",
) -> tuple[float, float]:
    """Mean per-sequence (AU-PRC, best F1), each sequence swept alone.

    The alternative aggregation to the pooled sweep: every sequence gets
    its own curve from its own scores, and the areas are averaged.
    """
    candidates = list(candidates)
    truths = list(truths)
    if len(candidates) != len(truths):
        raise ValueError(
            f"got {len(candidates)} candidate sets but {len(truths)} truth lists"
        )
    curves = [
        sweep([c], [t], epsilon, dedupe_distance, mode)
        for c, t in zip(candidates, truths)
    ]
    return (
        float(np.mean([c.au_prc for c in curves])),
        float(np.mean([c.best_f1 for c in curves])),
    )


def write_pr_csv(path, curve: PRCurve) -> None:
    """Write (threshold, precision, recall) rows, highest threshold first."""
    with open(path, "w", encoding="utf-8") as fh:
        for eta, p, r in zip(curve.thresholds, curve.precisions, curve.recalls):
            fh.write(f"{eta:.17g},{p:.17g},{r:.17g}\n")


def pr_summary(curve: PRCurve) -> dict:
    """JSON-ready summary: area, best F1, and the counts behind it."""
    return {
        "au_prc": curve.au_prc,
        "best_f1": curve.best_f1,
        "best_threshold": curve.best_threshold,
        "best_counts": {
            "tp": curve.best_counts.tp,
            "fp": curve.best_counts.fp,
            "fn": curve.best_counts.fn,
        },
    }

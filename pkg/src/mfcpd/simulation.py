"""Seeded generators for the synthetic benchmarks and the window-mixture
response experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Gaussian1D, GaussianND, Uniform1D
from .matched_filter import DEFAULT_QQ_NULL_BIAS, asymptote
from .timeseries import TimeSeries
from .two_sample_tests import (
    BIASED_KINDS,
    StatKind,
    TestKind,
    WindowPair,
    compute_statistic,
    sample_projections,
)

__all__ = [
    "MixtureResponseCurve",
    "gen_single_cp_1d",
    "gen_single_cp_2d",
    "gen_scale_doubling",
    "gen_alternating",
    "gen_uniform_shift_pair",
    "mixture_response",
    "write_curve_csv",
]

SINGLE_CP_LENGTH = 800
SINGLE_CP_EARLIEST = 300
SINGLE_CP_LATEST = 500

MEAN_SHIFT_1D = 0.25
MEAN_PRE_2D = (-0.12, 0.12)
MEAN_POST_2D = (0.12, -0.12)
COV_2D = ((1.0, 0.9), (0.9, 1.0))

SCALE_SEGMENT_LENGTH = 500
SCALE_BASE_MEAN = 0.1
SCALE_BASE_VAR = 0.1


def gen_single_cp_1d(seed: int) -> TimeSeries:
    """One standard-normal block, then a +0.25 mean shift.

    Length 800 with the change point drawn uniformly from {300..500}.
    """
    rng = np.random.default_rng(seed)
    tau = int(rng.integers(SINGLE_CP_EARLIEST, SINGLE_CP_LATEST + 1))
    pre = rng.normal(0.0, 1.0, tau)
    post = rng.normal(MEAN_SHIFT_1D, 1.0, SINGLE_CP_LENGTH - tau)
    return TimeSeries(np.concatenate([pre, post])[:, None], [tau])


def gen_single_cp_2d(seed: int) -> TimeSeries:
    """Correlated 2-d Gaussian with a mean flip across the change point.

    Both segments share the covariance [[1, 0.9], [0.9, 1]]; the mean
    moves from (-0.12, 0.12) to (0.12, -0.12), so the shift points along
    the weakly-varying anti-diagonal.
    """
    rng = np.random.default_rng(seed)
    tau = int(rng.integers(SINGLE_CP_EARLIEST, SINGLE_CP_LATEST + 1))
    cov = np.asarray(COV_2D)
    pre = rng.multivariate_normal(MEAN_PRE_2D, cov, tau, method="cholesky")
    post = rng.multivariate_normal(MEAN_POST_2D, cov, SINGLE_CP_LENGTH - tau, method="cholesky")
    return TimeSeries(np.vstack([pre, post]), [tau])


def gen_scale_doubling(seed: int, apply_cubic: bool = False) -> TimeSeries:
    """Four Gaussian segments, each a doubled copy of the previous one.

    Segment k holds 500 draws from N(0.1 * 2**k, 0.1 * 4**k), so both
    the mean and the standard deviation double at every boundary. With
    ``apply_cubic`` every sample is cubed after generation, which leaves
    all ranks (and hence the quantile-transform statistics) untouched.
    """
    rng = np.random.default_rng(seed)
    segments = [
        rng.normal(SCALE_BASE_MEAN * 2**k, math.sqrt(SCALE_BASE_VAR * 4**k), SCALE_SEGMENT_LENGTH)
        for k in range(4)
    ]
    x = np.concatenate(segments)
    if apply_cubic:
        x = x**3
    labels = [SCALE_SEGMENT_LENGTH * k for k in range(1, 4)]
    return TimeSeries(x[:, None], labels)


def gen_alternating(seed: int, segment_len: int = 400, num_segments: int = 4) -> TimeSeries:
    """Alternating N(0, 1) and N(0.25, 1) segments, labelled boundaries."""
    if segment_len < 1:
        raise ValueError(f"segment length must be at least 1, got {segment_len}")
    if num_segments < 1:
        raise ValueError(f"need at least one segment, got {num_segments}")
    rng = np.random.default_rng(seed)
    segments = [
        rng.normal(MEAN_SHIFT_1D * (k % 2), 1.0, segment_len) for k in range(num_segments)
    ]
    labels = [segment_len * k for k in range(1, num_segments)]
    return TimeSeries(np.concatenate(segments)[:, None], labels)


def gen_uniform_shift_pair(d: float) -> tuple[Uniform1D, Uniform1D]:
    """The pair U[0, 1] and U[d, d+1] used for the sensitivity sweep."""
    if d < 0:
        raise ValueError(f"shift must be nonnegative, got {d}")
    return Uniform1D(0.0, 1.0), Uniform1D(d, d + 1.0)


@dataclass(frozen=True, eq=False)
class MixtureResponseCurve:
    """Monte-Carlo mean statistic as a function of the mixing fraction."""

    pi_grid: np.ndarray
    mean_stat: np.ndarray
    std_err: np.ndarray
    n: int
    reps: int
    asymptote: float
    test: TestKind


def mixture_response(
    test: TestKind,
    p,
    q,
    n: int,
    reps: int,
    pi_grid=None,
    seed: int = 0,
    bias: float | None = None,
) -> MixtureResponseCurve:
    """Mean statistic when part of the left window comes from elsewhere.

    For each grid value pi, round(pi * n) of the left draws come from
    ``p`` and the rest from ``q``; the right window is pure ``q``. The
    quantile-transform statistics are reported as (D - bias) / n so that
    every statistic's curve targets its asymptote times the appropriate
    power of pi.

    Each (grid point, replicate) cell derives its own generator from
    (seed, grid index, replicate index), so partial runs and any
    evaluation order reproduce the same draws.
    """
    if reps < 1:
        raise ValueError(f"need at least one replicate, got {reps}")
    if pi_grid is None:
        pi_grid = np.linspace(0.0, 1.0, 11)
    pi_grid = np.asarray(pi_grid, dtype=float)
    if np.any((pi_grid < 0.0) | (pi_grid > 1.0)):
        raise ValueError("mixing fractions must lie in [0, 1]")
    if bias is None:
        bias = DEFAULT_QQ_NULL_BIAS
    scaled = test.kind in BIASED_KINDS
    projections = None
    if test.kind is StatKind.SWQT:
        projections = sample_projections(p.dim, test.num_projections, test.projection_seed)

    means = np.empty(pi_grid.size)
    errs = np.empty(pi_grid.size)
    vals = np.empty(reps)
    for i, pi in enumerate(pi_grid):
        m = int(round(pi * n))
        for r in range(reps):
            rng = np.random.default_rng([seed, i, r])
            from_p = p.sample(rng, m)
            from_q = q.sample(rng, n - m)
            left = np.concatenate([from_p, from_q], axis=0)
            right = q.sample(rng, n)
            stat = compute_statistic(WindowPair(left, right), test, projections)
            vals[r] = (stat - bias) / n if scaled else stat
        means[i] = vals.mean()
        errs[i] = vals.std(ddof=1) / math.sqrt(reps) if reps > 1 else math.inf
    return MixtureResponseCurve(
        pi_grid=pi_grid,
        mean_stat=means,
        std_err=errs,
        n=n,
        reps=reps,
        asymptote=asymptote(test, p, q),
        test=test,
    )


def write_curve_csv(path, curve: MixtureResponseCurve) -> None:
    """Write (pi1, mean, standard error, target) rows for plotting."""
    from .matched_filter import signature_exponent

    e = signature_exponent(curve.test.kind)
    with open(path, "w", encoding="utf-8") as fh:
        for pi, m, se in zip(curve.pi_grid, curve.mean_stat, curve.std_err):
            target = curve.asymptote * pi**e
            fh.write(f"{pi:.17g},{m:.17g},{se:.17g},{target:.17g}\n")

"""Matched smoothing filters and the closed-form levels they recover.

Each statistic responds to an isolated change point with a predictable
bump: triangular for the statistics that are linear in the fraction of
intruding draws, squared-triangular for the quadratic ones. Convolving
the statistic series with its own (normalized) bump concentrates that
response while averaging the noise down, without moving the peak value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

import numpy as np
from scipy import integrate, optimize

from .distributions import Gaussian1D, GaussianND
from .two_sample_tests import BIASED_KINDS, QUADRATIC_KINDS, StatKind, TestKind

if TYPE_CHECKING:
    from .detector import StatisticSeries

__all__ = [
    "DEFAULT_QQ_NULL_BIAS",
    "MatchedFilter",
    "build_filter",
    "apply_filter",
    "asymptote",
    "signature_exponent",
]

#: Null level of the quantile-transform statistics: the expected integral
#: of a squared Brownian bridge, stored to the published precision. It is
#: subtracted from the series before smoothing; pass ``bias`` to
#: :func:`build_filter` to override it.
DEFAULT_QQ_NULL_BIAS = 0.166


@dataclass(frozen=True, eq=False)
class MatchedFilter:
    """Smoothing taps plus the gain that restores peak height.

    ``taps[i]`` is the weight at lag ``i - window_size``; ``gain`` is
    1 / sum(taps**2), which makes the filter reproduce an exact
    signature's amplitude, and ``bias`` is removed from the series
    before the convolution.
    """

    taps: np.ndarray
    window_size: int
    gain: float
    bias: float


def signature_exponent(kind: StatKind) -> int:
    """Power of the mixing fraction in the statistic's expected bump."""
    return 2 if StatKind(kind) in QUADRATIC_KINDS else 1


def build_filter(test: TestKind, n: int, bias: float | None = None) -> MatchedFilter:
    """Filter matched to the statistic's response to a lone change point.

    Taps are 1 - |t|/n for the linear statistics and (1 - |t|/n)**2 for
    the quadratic ones, over lags t in [-n, n]. ``bias`` defaults to
    :data:`DEFAULT_QQ_NULL_BIAS` for the quantile-transform statistics
    and zero otherwise.
    """
    if n < 1:
        raise ValueError(f"window size must be at least 1, got {n}")
    lags = np.arange(-n, n + 1)
    taps = 1.0 - np.abs(lags) / n
    if signature_exponent(test.kind) == 2:
        taps = taps**2
    if bias is None:
        bias = DEFAULT_QQ_NULL_BIAS if test.kind in BIASED_KINDS else 0.0
    gain = 1.0 / float(np.sum(taps**2))
    return MatchedFilter(taps=taps, window_size=n, gain=gain, bias=bias)


def apply_filter(series: "StatisticSeries", filt: MatchedFilter) -> "StatisticSeries":
    """Smooth a statistic series after removing the filter's bias level.

    Values beyond either end contribute zero to the convolution, i.e.
    the bias-corrected series is zero-padded. The output covers the same
    time indices as the input.
    """
    x = series.values - filt.bias
    full = np.convolve(x, filt.taps, mode="full")
    n = filt.window_size
    out = filt.gain * full[n : n + x.size]
    return replace(series, values=out, filtered=True)


def asymptote(test: TestKind, p, q) -> float:
    """Plateau level d_*(P, Q) the statistic's bump converges to.

    This is the population value the mean statistic approaches (after
    bias removal and scaling where applicable) when one window is pure P
    and the other pure Q and the windows grow.
    """
    kind = test.kind
    if kind is StatKind.KS:
        return _ks_level(p, q)
    if kind is StatKind.W1DT:
        return _w1_level(p, q)
    if kind is StatKind.WQT:
        return _wqt_level(p, q)
    if kind is StatKind.SWQT:
        return _swqt_level(p, q)
    if kind is StatKind.MMD2:
        return _mmd2_level(p, q, test.kernel_bandwidth)
    raise ValueError(f"unknown statistic kind {kind}")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ValueError(f"asymptote not available: {what}")


def _ks_level(p, q) -> float:
    _require(hasattr(p, "cdf") and hasattr(q, "cdf"), "both specs need a scalar CDF")
    lo = min(p.support()[0], q.support()[0])
    hi = max(p.support()[1], q.support()[1])
    xs = np.linspace(lo, hi, 20001)
    corners = [p.support()[0], p.support()[1], q.support()[0], q.support()[1]]
    xs = np.unique(np.concatenate([xs, np.asarray(corners, dtype=float)]))
    gap = np.abs(np.asarray(p.cdf(xs)) - np.asarray(q.cdf(xs)))
    i = int(np.argmax(gap))
    best = float(gap[i])
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, xs.size - 1)]
    if a < b:
        res = optimize.minimize_scalar(
            lambda x: -abs(float(p.cdf(x)) - float(q.cdf(x))),
            bounds=(a, b),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, float(-res.fun))
    return best


def _w1_level(p, q) -> float:
    _require(hasattr(p, "ppf") and hasattr(q, "ppf"), "both specs need a quantile function")
    val, _ = integrate.quad(
        lambda u: abs(float(p.ppf(u)) - float(q.ppf(u))), 0.0, 1.0, limit=200
    )
    return val


def _wqt_level(p, q) -> float:
    _require(hasattr(p, "cdf") and hasattr(q, "ppf"), "specs need a CDF and a quantile function")
    val, _ = integrate.quad(
        lambda x: (float(p.cdf(q.ppf(x))) - x) ** 2, 0.0, 1.0, limit=200
    )
    return 0.5 * val


def _swqt_level(p, q, num_angles: int = 360) -> float:
    if p.dim == 1 and q.dim == 1:
        # projections on the 0-sphere only flip signs, which the
        # quantile transform of continuous laws does not see
        return _wqt_level(p, q)
    _require(
        isinstance(p, GaussianND) and isinstance(q, GaussianND) and p.dim == 2 and q.dim == 2,
        "sliced level implemented for 1-d specs and 2-d Gaussians",
    )
    # uniform probability measure on the circle; the integrand is smooth
    # and periodic, so the plain angle average converges spectrally
    angles = 2.0 * math.pi * np.arange(num_angles) / num_angles
    total = 0.0
    for a in angles:
        theta = np.array([math.cos(a), math.sin(a)])
        total += _wqt_level(p.project(theta), q.project(theta))
    return total / num_angles


def _gauss_kernel_mean(delta: float, spread: float, sigma: float) -> float:
    """E[exp(-Z^2 / (2 sigma^2))] for scalar Z ~ N(delta, spread)."""
    denom = sigma * sigma + spread
    return sigma / math.sqrt(denom) * math.exp(-(delta * delta) / (2.0 * denom))


def _gauss_kernel_mean_nd(delta: np.ndarray, spread: np.ndarray, sigma: float) -> float:
    """E[exp(-|Z|^2 / (2 sigma^2))] for vector Z ~ N(delta, spread)."""
    d = delta.size
    a = spread + sigma * sigma * np.eye(d)
    det = np.linalg.det(a) / sigma ** (2 * d)
    quad_form = float(delta @ np.linalg.solve(a, delta))
    return det**-0.5 * math.exp(-0.5 * quad_form)


def _mmd2_level(p, q, sigma: float) -> float:
    if isinstance(p, Gaussian1D) and isinstance(q, Gaussian1D):
        epp = _gauss_kernel_mean(0.0, 2.0 * p.var, sigma)
        eqq = _gauss_kernel_mean(0.0, 2.0 * q.var, sigma)
        epq = _gauss_kernel_mean(p.mean - q.mean, p.var + q.var, sigma)
        return epp + eqq - 2.0 * epq
    if isinstance(p, GaussianND) and isinstance(q, GaussianND):
        zero = np.zeros(p.dim)
        epp = _gauss_kernel_mean_nd(zero, 2.0 * p.cov, sigma)
        eqq = _gauss_kernel_mean_nd(zero, 2.0 * q.cov, sigma)
        epq = _gauss_kernel_mean_nd(p.mean - q.mean, p.cov + q.cov, sigma)
        return epp + eqq - 2.0 * epq
    if p.dim == 1 and q.dim == 1 and hasattr(p, "pdf") and hasattr(q, "pdf"):
        epp = _kernel_mean_quad(p, p, sigma)
        eqq = _kernel_mean_quad(q, q, sigma)
        epq = _kernel_mean_quad(p, q, sigma)
        return epp + eqq - 2.0 * epq
    raise ValueError("asymptote not available: mmd2 level needs Gaussian or 1-d density specs")


def _kernel_mean_quad(p, q, sigma: float) -> float:
    s2 = 2.0 * sigma * sigma
    (alo, ahi), (blo, bhi) = p.support(), q.support()
    val, _ = integrate.dblquad(
        lambda y, x: math.exp(-((x - y) ** 2) / s2) * float(p.pdf(x)) * float(q.pdf(y)),
        alo,
        ahi,
        blo,
        bhi,
    )
    return val

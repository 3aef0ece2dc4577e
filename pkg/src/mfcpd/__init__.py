"""Sliding-window two-sample change point detection with matched
filtering of the statistic series."""

from .detector import (
    ChangePointSet,
    DetectionConfig,
    PipelineResult,
    SequenceTooShortError,
    StatisticSeries,
    dedupe_peaks,
    detect_peaks,
    run_pipeline,
    statistic_series,
)
from .distributions import Gaussian1D, GaussianND, Mixture, Uniform1D
from .evaluation import (
    ConfusionCounts,
    DegenerateEvalError,
    EvalConfig,
    PRCurve,
    confusion,
    mean_per_sequence_metrics,
    pr_metrics,
    sweep,
)
from .matched_filter import (
    DEFAULT_QQ_NULL_BIAS,
    MatchedFilter,
    apply_filter,
    asymptote,
    build_filter,
    signature_exponent,
)
from .order_stats import SampleSet, edf_eval, qq_knots, quantile
from .simulation import (
    MixtureResponseCurve,
    gen_alternating,
    gen_scale_doubling,
    gen_single_cp_1d,
    gen_single_cp_2d,
    gen_uniform_shift_pair,
    mixture_response,
)
from .timeseries import CsvParseError, TimeSeries, read_series_csv, write_series_csv
from .two_sample_tests import (
    StatKind,
    TestKind,
    WindowPair,
    compute_statistic,
    ks,
    mmd2,
    sample_projections,
    swqt,
    w1dt,
    wqt,
)

__version__ = "0.1.0"

__all__ = [
    "ChangePointSet",
    "ConfusionCounts",
    "CsvParseError",
    "DEFAULT_QQ_NULL_BIAS",
    "DegenerateEvalError",
    "DetectionConfig",
    "EvalConfig",
    "Gaussian1D",
    "GaussianND",
    "MatchedFilter",
    "Mixture",
    "MixtureResponseCurve",
    "PRCurve",
    "PipelineResult",
    "SampleSet",
    "SequenceTooShortError",
    "StatKind",
    "StatisticSeries",
    "TestKind",
    "TimeSeries",
    "Uniform1D",
    "WindowPair",
    "apply_filter",
    "asymptote",
    "build_filter",
    "compute_statistic",
    "confusion",
    "dedupe_peaks",
    "detect_peaks",
    "edf_eval",
    "gen_alternating",
    "gen_scale_doubling",
    "gen_single_cp_1d",
    "gen_single_cp_2d",
    "gen_uniform_shift_pair",
    "ks",
    "mean_per_sequence_metrics",
    "mixture_response",
    "mmd2",
    "pr_metrics",
    "qq_knots",
    "quantile",
    "read_series_csv",
    "run_pipeline",
    "sample_projections",
    "signature_exponent",
    "statistic_series",
    "sweep",
    "swqt",
    "w1dt",
    "wqt",
    "write_series_csv",
    "__version__",
]

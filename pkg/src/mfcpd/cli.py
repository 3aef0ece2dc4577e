"""Command line surface: simulate benchmark data, run detection on CSV
series, export filter shapes, and evaluate detections against labels.

Every failure path exits nonzero after printing a single line to stderr
of the form "<category>: <detail>", where the category is one of
parse-error, short-sequence, missing-file, or bad-args.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .detector import (
    ChangePointSet,
    SequenceTooShortError,
    dedupe_peaks,
    detect_peaks,
    statistic_series,
)
from .distributions import Gaussian1D
from .evaluation import pr_summary, sweep, write_pr_csv
from .experiments import (
    DEFAULT_BASE_SEED,
    DatasetSpec,
    run_benchmark,
)
from .matched_filter import apply_filter, build_filter
from .simulation import (
    gen_alternating,
    gen_scale_doubling,
    gen_single_cp_1d,
    gen_single_cp_2d,
    mixture_response,
)
from .timeseries import (
    CsvParseError,
    TimeSeries,
    read_labels,
    read_series_csv,
    write_labels,
    write_series_csv,
)
from .two_sample_tests import StatKind, TestKind

__all__ = ["main"]

TEST_NAMES = tuple(k.value for k in StatKind)


def _add_test_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--test", choices=TEST_NAMES, default="wqt", help="statistic to compute")
    p.add_argument("--bandwidth", type=float, default=1.0, help="kernel bandwidth (mmd2)")
    p.add_argument(
        "--projections", type=int, default=128, help="number of random projections (swqt)"
    )


def _test_from_args(args, projection_seed: int = 0) -> TestKind:
    return TestKind(
        kind=StatKind(args.test),
        kernel_bandwidth=args.bandwidth,
        num_projections=args.projections,
        projection_seed=projection_seed,
    )


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_detect(args) -> int:
    series = read_series_csv(args.input)
    test = _test_from_args(args, projection_seed=args.seed)
    raw = statistic_series(series, args.window, test)
    if args.unfiltered:
        processed = raw
        delta = args.delta if args.delta is not None else args.window
        peaks = dedupe_peaks(detect_peaks(raw, args.threshold), delta)
        bias = alpha = None
    else:
        filt = build_filter(test, args.window)
        processed = apply_filter(raw, filt)
        peaks = detect_peaks(processed, args.threshold)
        bias, alpha = filt.bias, filt.gain
    result = {
        "test": test.kind.value,
        "n": args.window,
        "filtered": not args.unfiltered,
        "bias": bias,
        "alpha": alpha,
        "change_points": [{"t": int(t), "score": float(s)} for t, s in peaks.as_pairs()],
        "series_offset": args.window,
    }
    _write_json(result, args.json_out)
    if args.series_out is not None:
        write_series_csv(args.series_out, TimeSeries(processed.values[:, None]))
    if args.raw_out is not None:
        write_series_csv(args.raw_out, TimeSeries(raw.values[:, None]))
    return 0


def cmd_simulate(args) -> int:
    if args.generator == "single-cp-1d":
        series = gen_single_cp_1d(args.seed)
    elif args.generator == "single-cp-2d":
        series = gen_single_cp_2d(args.seed)
    elif args.generator == "scale-doubling":
        series = gen_scale_doubling(args.seed, args.cubic)
    elif args.generator == "alternating":
        series = gen_alternating(args.seed, args.segment_len, args.num_segments)
    else:
        raise ValueError(f"unknown generator {args.generator!r}")
    write_series_csv(args.out, series)
    write_labels(args.labels_out, series.labels)
    return 0


def cmd_filter_shape(args) -> int:
    test = _test_from_args(args)
    n = args.window
    filt = build_filter(test, n)
    lags = np.arange(-n, n + 1)
    with open(args.out, "w", encoding="utf-8") as fh:
        for t, h in zip(lags, filt.taps):
            fh.write(f"{t},{h:.17g}\n")
    if args.empirical_out is not None:
        curve = mixture_response(
            test,
            Gaussian1D(0.0, 1.0),
            Gaussian1D(0.25, 1.0),
            n=n,
            reps=args.reps,
            seed=args.seed,
        )
        with open(args.empirical_out, "w", encoding="utf-8") as fh:
            for pi, mean in zip(curve.pi_grid, curve.mean_stat):
                fh.write(f"{pi:.17g},{mean / curve.asymptote:.17g}\n")
    return 0


def _evaluate_pair(args) -> int:
    with open(args.pred, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        points = data["change_points"]
        times = np.asarray([cp["t"] for cp in points], dtype=np.int64)
        scores = np.asarray([cp["score"] for cp in points], dtype=float)
        window = int(data["n"])
        filtered = bool(data["filtered"])
    except KeyError as missing:
        raise ValueError(f"prediction file lacks field {missing}") from None
    peaks = ChangePointSet(times, scores)
    truth = read_labels(args.labels)
    epsilon = args.epsilon if args.epsilon is not None else window
    if filtered:
        dedupe = None
    else:
        dedupe = args.delta if args.delta is not None else window
    curve = sweep([peaks], [truth], epsilon, dedupe, args.match)
    if args.pr_out is not None:
        write_pr_csv(args.pr_out, curve)
    _write_json(pr_summary(curve), args.json_out)
    return 0


def _evaluate_benchmark(args) -> int:
    generator = args.benchmark.replace("-", "_")
    spec = DatasetSpec(generator, count=args.count, base_seed=args.seed)
    names = args.tests.split(",") if args.tests else list(_default_tests(args.benchmark))
    tests = tuple(
        TestKind(StatKind(name.strip()), kernel_bandwidth=args.bandwidth,
                 num_projections=args.projections)
        for name in names
    )
    windows = tuple(int(tok) for tok in args.windows.split(","))
    rows = run_benchmark(spec, tests, windows, mode=args.match)
    payload = {
        "benchmark": args.benchmark,
        "count": args.count,
        "base_seed": args.seed,
        "rows": [
            {
                "test": row.test.kind.value,
                "n": row.n,
                "filtered": row.filtered,
                "au_prc": row.au_prc,
                "best_f1": row.best_f1,
            }
            for row in rows
        ],
    }
    _write_json(payload, args.json_out)
    return 0


def _default_tests(benchmark: str) -> tuple[str, ...]:
    if benchmark == "single-cp-2d":
        return ("swqt", "mmd2")
    return ("wqt", "mmd2", "w1dt", "ks")


def cmd_evaluate(args) -> int:
    if args.benchmark is not None:
        return _evaluate_benchmark(args)
    if args.pred is None or args.labels is None:
        raise ValueError("need either --benchmark or both --pred and --labels")
    return _evaluate_pair(args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfcpd",
        description="Sliding-window two-sample change point detection with matched filtering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect change points in a CSV series")
    p.add_argument("input", help="data CSV: one row per time step, columns = dimensions")
    _add_test_flags(p)
    p.add_argument("--window", type=int, required=True, help="window size n")
    p.add_argument(
        "--threshold",
        type=float,
        default=float("-inf"),
        help="detection threshold (use --threshold=VALUE for negatives)",
    )
    p.add_argument(
        "--unfiltered",
        action="store_true",
        help="skip the matched filter and dedupe raw peaks instead",
    )
    p.add_argument("--delta", type=int, default=None, help="dedupe distance (default: window)")
    p.add_argument("--seed", type=int, default=0, help="projection seed for swqt")
    p.add_argument("--json-out", default=None, help="result JSON path (default: stdout)")
    p.add_argument("--series-out", default=None, help="write the processed statistic series CSV")
    p.add_argument("--raw-out", default=None, help="write the unfiltered statistic series CSV")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("simulate", help="write a benchmark sequence and its labels")
    p.add_argument(
        "generator",
        help="one of single-cp-1d, single-cp-2d, scale-doubling, alternating",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="data CSV path")
    p.add_argument("--labels-out", required=True, help="labels path, one index per line")
    p.add_argument("--cubic", action="store_true", help="cube the scale-doubling output")
    p.add_argument("--segment-len", type=int, default=400, help="alternating segment length")
    p.add_argument("--num-segments", type=int, default=4, help="alternating segment count")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("filter-shape", help="export matched filter taps")
    _add_test_flags(p)
    p.add_argument("--window", type=int, required=True, help="window size n")
    p.add_argument("--out", required=True, help="tap CSV path, rows (lag, tap)")
    p.add_argument(
        "--empirical-out",
        default=None,
        help="also write the empirical (mixing fraction, mean/asymptote) curve",
    )
    p.add_argument("--reps", type=int, default=1000, help="replicates for the empirical curve")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_filter_shape)

    p = sub.add_parser("evaluate", help="score detections or run a benchmark sweep")
    p.add_argument("--pred", default=None, help="detect-result JSON to score")
    p.add_argument("--labels", default=None, help="truth labels file")
    p.add_argument("--epsilon", type=int, default=None, help="match tolerance (default: window)")
    p.add_argument("--delta", type=int, default=None, help="dedupe distance (default: window)")
    p.add_argument(
        "--match",
        choices=("independent", "one_to_one"),
        default="independent",
        help="confusion counting mode",
    )
    p.add_argument(
        "--benchmark",
        choices=("single-cp-1d", "single-cp-2d", "scale-doubling"),
        default=None,
        help="sweep a seeded dataset end to end instead of scoring --pred",
    )
    p.add_argument("--tests", default=None, help="comma list of statistics for --benchmark")
    p.add_argument("--windows", default="50,100,150", help="comma list of window sizes")
    p.add_argument("--count", type=int, default=40, help="sequences in the benchmark dataset")
    p.add_argument("--seed", type=int, default=DEFAULT_BASE_SEED, help="benchmark base seed")
    p.add_argument("--bandwidth", type=float, default=1.0)
    p.add_argument("--projections", type=int, default=128)
    p.add_argument("--pr-out", default=None, help="PR curve CSV path")
    p.add_argument("--json-out", default=None, help="summary JSON path (default: stdout)")
    p.set_defaults(func=cmd_evaluate)

    return parser


def _fail(category: str, err: BaseException) -> int:
    sys.stderr.write(f"{category}: {err}\n")
    return 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CsvParseError as err:
        return _fail("parse-error", err)
    except json.JSONDecodeError as err:
        return _fail("parse-error", err)
    except SequenceTooShortError as err:
        return _fail("short-sequence", err)
    except FileNotFoundError as err:
        return _fail("missing-file", err)
    except ValueError as err:
        return _fail("bad-args", err)


if __name__ == "__main__":
    raise SystemExit(main())

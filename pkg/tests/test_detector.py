"""Series construction, peak picking, dedupe, and the full pipeline."""

import numpy as np
import pytest

from mfcpd.detector import (
    ChangePointSet,
    DetectionConfig,
    SequenceTooShortError,
    StatisticSeries,
    dedupe_peaks,
    detect_peaks,
    run_pipeline,
    statistic_series,
)
from mfcpd.matched_filter import apply_filter, build_filter
from mfcpd.order_stats import SampleSet
from mfcpd.timeseries import TimeSeries
from mfcpd.two_sample_tests import (
    StatKind,
    TestKind,
    WindowPair,
    ks,
    sample_projections,
    swqt,
    wqt,
)


class TestStatisticSeries:
    def test_times_and_length(self):
        rng = np.random.default_rng(60)
        for _ in range(10):
            n = int(rng.integers(1, 12))
            T = int(rng.integers(2 * n, 2 * n + 40))
            series = statistic_series(rng.normal(size=T), n, TestKind(StatKind.KS))
            assert series.values.size == T - 2 * n + 1
            assert series.times[0] == n and series.times[-1] == T - n

    def test_minimum_length_gives_single_split(self):
        rng = np.random.default_rng(61)
        n = 6
        x = rng.normal(size=2 * n)
        series = statistic_series(x, n, TestKind(StatKind.W1DT))
        assert series.values.size == 1
        assert series.times[0] == n

    def test_too_short_raises(self):
        with pytest.raises(SequenceTooShortError):
            statistic_series(np.zeros(11), 6, TestKind(StatKind.KS))

    def test_values_match_direct_window_evaluation(self):
        rng = np.random.default_rng(62)
        x = rng.normal(size=30)
        n = 5
        series = statistic_series(x, n, TestKind(StatKind.WQT))
        for i, t in enumerate(range(n, 30 - n + 1)):
            want = wqt(SampleSet(x[t - n : t]), SampleSet(x[t : t + n]))
            assert series.values[i] == want

    def test_accepts_timeseries_and_array_alike(self):
        rng = np.random.default_rng(63)
        x = rng.normal(size=(40, 2))
        t = TestKind(StatKind.MMD2)
        a = statistic_series(x, 8, t)
        b = statistic_series(TimeSeries(x, [20]), 8, t)
        np.testing.assert_array_equal(a.values, b.values)

    def test_swqt_projections_shared_across_splits(self):
        rng = np.random.default_rng(64)
        x = rng.normal(size=(26, 3))
        n = 6
        test = TestKind(StatKind.SWQT, num_projections=12, projection_seed=4)
        series = statistic_series(x, n, test)
        dirs = sample_projections(3, 12, seed=4)
        for i, t in enumerate(range(n, 26 - n + 1)):
            pair = WindowPair(x[t - n : t], x[t : t + n])
            assert series.values[i] == swqt(pair, test, projections=dirs)

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            statistic_series(np.zeros(10), 0, TestKind(StatKind.KS))


class TestChangePointSet:
    def test_requires_increasing_times(self):
        with pytest.raises(ValueError):
            ChangePointSet(np.array([5, 3]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            ChangePointSet(np.array([3, 3]), np.array([1.0, 2.0]))

    def test_requires_matching_shapes(self):
        with pytest.raises(ValueError):
            ChangePointSet(np.array([1, 2]), np.array([1.0]))

    def test_as_pairs(self):
        cps = ChangePointSet(np.array([4, 9]), np.array([0.5, 0.25]))
        assert cps.as_pairs() == [(4, 0.5), (9, 0.25)]
        assert len(cps) == 2


class TestDetectPeaks:
    def series(self, values, n=3):
        return StatisticSeries(np.asarray(values, dtype=float), n, TestKind(StatKind.KS))

    def test_strict_interior_maxima(self):
        peaks = detect_peaks(self.series([1, 3, 2, 3, 3, 1]), 0.0)
        np.testing.assert_array_equal(peaks.times, [3 + 1])
        np.testing.assert_array_equal(peaks.scores, [3.0])

    def test_plateaus_are_not_peaks(self):
        peaks = detect_peaks(self.series([1, 2, 2, 1]), 0.0)
        assert len(peaks) == 0

    def test_endpoints_only_beat_inner_neighbor(self):
        peaks = detect_peaks(self.series([5, 1, 4]), 0.0)
        np.testing.assert_array_equal(peaks.times, [3, 5])

    def test_single_point_series(self):
        peaks = detect_peaks(self.series([2.0]), 1.0)
        np.testing.assert_array_equal(peaks.times, [3])
        assert len(detect_peaks(self.series([2.0]), 2.0)) == 0

    def test_threshold_is_strict(self):
        peaks = detect_peaks(self.series([0, 1, 0]), 1.0)
        assert len(peaks) == 0

    def test_negative_values_use_minus_inf_ends(self):
        # a negative endpoint still wins against the virtual neighbor
        peaks = detect_peaks(self.series([-0.2, -0.5]), -1.0)
        np.testing.assert_array_equal(peaks.times, [3])
        np.testing.assert_array_equal(peaks.scores, [-0.2])

    def test_times_offset_by_window(self):
        peaks = detect_peaks(self.series([0, 5, 0], n=7), 0.0)
        np.testing.assert_array_equal(peaks.times, [8])


def dedupe_oracle(times, scores, min_distance):
    order = sorted(range(len(times)), key=lambda i: (-scores[i], times[i]))
    kept = []
    for i in order:
        if all(abs(times[i] - times[j]) > min_distance for j in kept):
            kept.append(i)
    return sorted(times[i] for i in kept)


class TestDedupePeaks:
    def test_matches_oracle_on_random_sets_with_ties(self):
        rng = np.random.default_rng(65)
        for _ in range(60):
            m = int(rng.integers(0, 15))
            times = np.sort(rng.choice(200, size=m, replace=False))
            # coarse scores force ties so the earlier-time rule matters
            scores = rng.integers(0, 4, size=m).astype(float)
            peaks = ChangePointSet(times, scores)
            delta = int(rng.integers(0, 30))
            got = dedupe_peaks(peaks, delta)
            assert list(got.times) == dedupe_oracle(list(times), list(scores), delta)

    def test_strongest_wins_locally(self):
        peaks = ChangePointSet(np.array([10, 15, 30]), np.array([2.0, 5.0, 1.0]))
        out = dedupe_peaks(peaks, 10)
        np.testing.assert_array_equal(out.times, [15, 30])
        np.testing.assert_array_equal(out.scores, [5.0, 1.0])

    def test_score_tie_goes_to_earlier_time(self):
        peaks = ChangePointSet(np.array([10, 14]), np.array([3.0, 3.0]))
        out = dedupe_peaks(peaks, 5)
        np.testing.assert_array_equal(out.times, [10])

    def test_zero_distance_keeps_everything(self):
        peaks = ChangePointSet(np.array([1, 2, 3]), np.array([3.0, 1.0, 2.0]))
        out = dedupe_peaks(peaks, 0)
        np.testing.assert_array_equal(out.times, [1, 2, 3])

    def test_boundary_distance_is_exclusive(self):
        # separation exactly min_distance still collides
        peaks = ChangePointSet(np.array([10, 20]), np.array([1.0, 2.0]))
        out = dedupe_peaks(peaks, 10)
        np.testing.assert_array_equal(out.times, [20])

    def test_rejects_negative_distance(self):
        with pytest.raises(ValueError):
            dedupe_peaks(ChangePointSet(np.array([1]), np.array([1.0])), -1)


class TestDetectionConfig:
    def test_validation(self):
        DetectionConfig(window=5, threshold=0.1)
        with pytest.raises(ValueError):
            DetectionConfig(window=0, threshold=0.1)
        with pytest.raises(ValueError):
            DetectionConfig(window=5, threshold=0.1, dedupe_distance=-1)


class TestRunPipeline:
    def test_filtered_composition(self):
        rng = np.random.default_rng(66)
        x = rng.normal(size=60)
        test = TestKind(StatKind.KS)
        cfg = DetectionConfig(window=8, threshold=0.2)
        res = run_pipeline(x, cfg, test)
        raw = statistic_series(x, 8, test)
        want = detect_peaks(apply_filter(raw, build_filter(test, 8)), 0.2)
        np.testing.assert_array_equal(res.change_points.times, want.times)
        np.testing.assert_array_equal(res.change_points.scores, want.scores)
        assert res.processed.filtered and not res.raw.filtered

    def test_unfiltered_composition(self):
        rng = np.random.default_rng(67)
        x = rng.normal(size=60)
        test = TestKind(StatKind.WQT)
        cfg = DetectionConfig(window=6, threshold=0.1, use_filter=False, dedupe_distance=6)
        res = run_pipeline(x, cfg, test)
        want = dedupe_peaks(detect_peaks(res.raw, 0.1), 6)
        np.testing.assert_array_equal(res.change_points.times, want.times)
        assert res.processed is res.raw

    def test_constant_input_yields_no_detections(self):
        x = np.full(40, 3.25)
        for kind in StatKind:
            test = TestKind(kind, num_projections=4)
            cfg = DetectionConfig(window=5, threshold=0.0, use_filter=(kind != StatKind.KS))
            res = run_pipeline(x, cfg, test)
            assert len(res.change_points) == 0, kind

    def test_constant_input_saturates_quantile_statistic(self):
        # all-tied windows pin the staircase at one: the raw value is
        # the n/6 cap, not zero, yet it stays flat so nothing triggers
        x = np.full(30, 1.0)
        res = run_pipeline(x, DetectionConfig(window=5, threshold=0.0), TestKind(StatKind.WQT))
        np.testing.assert_allclose(res.raw.values, 5.0 / 6.0, rtol=1e-12)
        assert len(res.change_points) == 0

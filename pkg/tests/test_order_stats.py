"""Order-statistic primitives against brute-force counting oracles."""

import numpy as np
import pytest

from mfcpd.order_stats import SampleSet, edf_eval, qq_knots, quantile


def brute_edf(values, x):
    return sum(1 for v in values if v <= x) / len(values)


class TestSampleSet:
    def test_sorts_and_keeps_original(self):
        s = SampleSet([3.0, 1.0, 2.0])
        np.testing.assert_array_equal(s.values, [3.0, 1.0, 2.0])
        np.testing.assert_array_equal(s.sorted_values, [1.0, 2.0, 3.0])
        assert s.size == 3

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            SampleSet([])

    def test_rejects_2d(self):
        with pytest.raises(ValueError):
            SampleSet(np.zeros((3, 2)))


class TestEdfEval:
    def test_matches_brute_force_counting(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(1, 40))
            vals = rng.normal(size=n)
            s = SampleSet(vals)
            for x in rng.normal(size=10):
                assert edf_eval(s, x) == brute_edf(vals, x)

    def test_right_continuous_at_sample_points(self):
        s = SampleSet([1.0, 2.0, 2.0, 3.0])
        assert edf_eval(s, 2.0) == 0.75
        assert edf_eval(s, np.nextafter(2.0, -np.inf)) == 0.25

    def test_extremes(self):
        s = SampleSet([0.0, 1.0])
        assert edf_eval(s, -5.0) == 0.0
        assert edf_eval(s, 5.0) == 1.0


class TestQuantile:
    def test_generalized_inverse_against_scan(self):
        # oracle: smallest sample value whose EDF reaches u
        rng = np.random.default_rng(12)
        for _ in range(50):
            n = int(rng.integers(1, 30))
            s = SampleSet(rng.normal(size=n))
            for u in rng.uniform(0.0, 1.0, size=10):
                want = next(v for v in s.sorted_values if brute_edf(s.values, v) >= u)
                assert quantile(s, float(u)) == want

    def test_exact_at_grid_levels(self):
        # u = k/n must return the k-th order statistic even when k/n
        # is not exactly representable
        rng = np.random.default_rng(13)
        for n in (1, 3, 7, 10, 49):
            s = SampleSet(rng.normal(size=n))
            for k in range(1, n + 1):
                assert quantile(s, k / n) == s.sorted_values[k - 1]

    def test_endpoints(self):
        s = SampleSet([5.0, -1.0, 2.0])
        assert quantile(s, 0.0) == -1.0
        assert quantile(s, 1.0) == 5.0

    def test_rejects_out_of_range(self):
        s = SampleSet([1.0])
        with pytest.raises(ValueError):
            quantile(s, -0.1)
        with pytest.raises(ValueError):
            quantile(s, 1.1)


class TestQqKnots:
    def test_matches_edf_at_order_statistics(self):
        rng = np.random.default_rng(14)
        for _ in range(30):
            n = int(rng.integers(1, 25))
            m = int(rng.integers(1, 25))
            f = SampleSet(rng.normal(size=n))
            g = SampleSet(rng.normal(size=m))
            knots = qq_knots(f, g)
            assert knots.shape == (m,)
            for k in range(m):
                assert knots[k] == edf_eval(f, g.sorted_values[k])

    def test_nondecreasing_within_unit_interval(self):
        rng = np.random.default_rng(15)
        f = SampleSet(rng.normal(size=40))
        g = SampleSet(rng.normal(size=40))
        knots = qq_knots(f, g)
        assert np.all(np.diff(knots) >= 0)
        assert knots.min() >= 0.0 and knots.max() <= 1.0

    def test_identical_samples_give_uniform_grid(self):
        vals = np.array([0.3, -1.2, 4.0, 0.9])
        f = SampleSet(vals)
        knots = qq_knots(f, SampleSet(vals.copy()))
        np.testing.assert_array_equal(knots, np.arange(1, 5) / 4)

    def test_disjoint_supports_saturate(self):
        f = SampleSet([1.0, 2.0, 3.0])
        g = SampleSet([10.0, 11.0, 12.0])
        np.testing.assert_array_equal(qq_knots(f, g), [1.0, 1.0, 1.0])
        np.testing.assert_array_equal(qq_knots(g, f), [0.0, 0.0, 0.0])

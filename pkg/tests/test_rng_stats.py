import math

import numpy as np
import pytest
from scipy import stats as sps

from partlab.rng import RandomStream
from partlab.stats import (
    C_SCALE,
    Z95,
    EventEstimate,
    kahan_cumsum,
    kahan_cumsum_rows,
    kahan_sum,
    make_estimate,
    wilson_interval,
)


class TestRandomStream:
    def test_same_key_same_sequence(self):
        a = RandomStream(42, 3).uniform(100)
        b = RandomStream(42, 3).uniform(100)
        assert np.array_equal(a, b)

    def test_different_stream_ids_differ(self):
        a = RandomStream(42, 0).uniform(100)
        b = RandomStream(42, 1).uniform(100)
        assert not np.array_equal(a, b)

    def test_substream_matches_direct_construction(self):
        root = RandomStream(7, 0)
        assert np.array_equal(
            root.substream(5).uniform(10), RandomStream(7, 5).uniform(10)
        )

    def test_uniform_open_interval(self):
        u = RandomStream(1, 1).uniform_open(10**5)
        assert u.min() > 0.0
        assert u.max() < 1.0
        scalar = RandomStream(1, 2).uniform_open()
        assert 0.0 < scalar < 1.0

    def test_exponential_moments(self):
        x = RandomStream(11, 0).exponential(2 * 10**5)
        n = len(x)
        assert abs(x.mean() - 1.0) < 5 / math.sqrt(n)
        # second moment of Exp(1) is 2, variance of x^2 is 20
        assert abs((x**2).mean() - 2.0) < 5 * math.sqrt(20 / n)
        assert x.min() > 0

    def test_gamma_integer_shape_mean(self):
        g = RandomStream(13, 0).gamma(7.0, 10**5)
        assert abs(g.mean() - 7.0) < 5 * math.sqrt(7.0 / 10**5)

    def test_integer_below_edges(self):
        rng = RandomStream(3, 0)
        assert rng.integer_below(1) == 0
        with pytest.raises(ValueError):
            rng.integer_below(0)

    def test_integer_below_uniform(self):
        rng = RandomStream(5, 0)
        draws = np.array([rng.integer_below(22) for _ in range(22 * 2000)])
        counts = np.bincount(draws, minlength=22)
        assert sps.chisquare(counts).pvalue > 0.001

    def test_integer_below_bignum(self):
        bound = 190569292**3  # needs > 64 bits
        rng = RandomStream(9, 0)
        vals = [rng.integer_below(bound) for _ in range(200)]
        assert all(0 <= v < bound for v in vals)
        assert any(v > bound // 2 for v in vals)
        rerun = RandomStream(9, 0)
        assert vals == [rerun.integer_below(bound) for _ in range(200)]


class TestWilson:
    def test_degenerate_all_hits(self):
        lo, hi = wilson_interval(100, 100)
        assert 0.9 < lo < 1.0
        assert hi <= 1.0

    def test_degenerate_no_hits(self):
        lo, hi = wilson_interval(0, 100)
        assert lo >= 0.0
        assert 0.0 < hi < 0.1

    def test_half(self):
        lo, hi = wilson_interval(500, 1000)
        assert lo < 0.5 < hi
        # symmetric around 1/2 for this case
        assert abs((0.5 - lo) - (hi - 0.5)) < 1e-12

    def test_interval_ordering_and_bounds(self):
        eps = 1e-12  # rounding at the degenerate ends
        for hits in (0, 1, 17, 99, 100):
            lo, hi = wilson_interval(hits, 100)
            assert 0.0 <= lo <= hits / 100 + eps
            assert hits / 100 - eps <= hi <= 1.0
            assert lo < hi

    def test_z95_value(self):
        assert abs(Z95 - 1.959963984540054) < 1e-15

    def test_errors(self):
        with pytest.raises(ValueError):
            wilson_interval(5, 0)
        with pytest.raises(ValueError):
            wilson_interval(-1, 10)
        with pytest.raises(ValueError):
            wilson_interval(11, 10)


class TestEventEstimate:
    def test_make_estimate_fields(self):
        est = make_estimate("demo", 30, 100, n=50, gamma=0.2)
        assert est.event == "demo"
        assert est.hits == 30
        assert est.trials == 100
        assert est.estimate == 0.3
        assert est.ci_lo < 0.3 < est.ci_hi
        assert est.n == 50 and est.gamma == 0.2 and est.delta is None

    def test_halfwidth(self):
        est = make_estimate("demo", 30, 100)
        assert abs(est.ci_halfwidth - (est.ci_hi - est.ci_lo) / 2) < 1e-15

    def test_frozen(self):
        est = make_estimate("demo", 1, 2)
        with pytest.raises(AttributeError):
            est.hits = 7

    def test_equality_for_determinism_checks(self):
        assert make_estimate("e", 3, 10, n=4) == make_estimate("e", 3, 10, n=4)
        assert isinstance(make_estimate("e", 3, 10), EventEstimate)


class TestCompensatedSums:
    def test_kahan_sum_hard_case(self):
        # 1 + 2^-60 repeated: plain float addition loses the tail
        values = [1.0] + [2.0**-60] * 1000
        assert kahan_sum(values) > 1.0
        assert abs(kahan_sum(values) - (1.0 + 1000 * 2.0**-60)) < 1e-18

    def test_cumsum_matches_fsum_prefixes(self):
        rng = RandomStream(21, 0)
        x = rng.standard_normal(500) * 1e8 + rng.standard_normal(500)
        got = kahan_cumsum(x)
        want = [math.fsum(x[: i + 1]) for i in range(len(x))]
        assert np.allclose(got, want, rtol=0, atol=1e-6)
        assert got.shape == x.shape

    def test_cumsum_rows_matches_1d(self):
        rng = RandomStream(22, 0)
        a = rng.standard_normal((8, 64))
        rows = kahan_cumsum_rows(a)
        for i in range(a.shape[0]):
            assert np.array_equal(rows[i], kahan_cumsum(a[i]))

    def test_c_scale_value(self):
        assert abs(C_SCALE - math.pi / math.sqrt(6.0)) < 1e-16

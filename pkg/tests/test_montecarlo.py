import math

import numpy as np
import pytest
from scipy import stats

from schneidermf.errors import InsufficientTrustedDigits
from schneidermf.montecarlo import (SamplerMode, estimate_mean, estimate_means, orbit_digits,
                                    sample_digit_model, sample_haar_point, sample_stream)
from schneidermf.padic import valuation
from schneidermf.spectrum import haar_mean


def test_valuation_histogram_p2():
    rng = np.random.default_rng(1)
    n = 100_000
    counts = {}
    for _ in range(n):
        v = valuation(sample_haar_point(2, 12, rng))
        counts[v] = counts.get(v, 0) + 1
    for k in range(1, 9):
        prob = 2.0**-k
        sigma = math.sqrt(n * prob * (1 - prob))
        assert abs(counts.get(k, 0) - n * prob) < 4 * sigma


def test_sample_determinism():
    a = sample_haar_point(3, 64, sample_stream(42, 0))
    b = sample_haar_point(3, 64, sample_stream(42, 0))
    assert a == b
    assert a != sample_haar_point(3, 64, sample_stream(42, 1))


def test_first_digit_mean_p7():
    rng = np.random.default_rng(8)
    n = 20_000
    first = np.array([sample_haar_point(7, 8, rng).digits()[1] for _ in range(n)])
    # resampling of the all-zero draw is negligible at 7**-8
    assert abs(first.mean() - 3.0) < 4 * math.sqrt(4.0 / n)


def test_sample_precision_floor():
    with pytest.raises(ValueError):
        sample_haar_point(2, 4, np.random.default_rng(0))


def test_digit_model_laws():
    rng = np.random.default_rng(3)
    n = 200_000
    d2 = sample_digit_model(2, n, rng)
    assert d2.shape == (n, 2) and d2[:, 0].min() >= 1 and np.all(d2[:, 1] == 1)
    assert abs(d2[:, 0].mean() - 2.0) < 4 * math.sqrt(2.0 / n)
    d3 = sample_digit_model(3, n, rng)
    frac = np.mean(d3[:, 0] == 1)
    assert abs(frac - 2 / 3) < 4 * math.sqrt(2 / 9 / n)
    assert set(np.unique(d3[:, 1])) == {1, 2}
    for p in (5, 11):
        assert sample_digit_model(p, 1000, rng)[:, 0].min() >= 1


def test_orbit_b_digits_uniform():
    b = []
    for i in range(300):
        b.extend(orbit_digits(5, 100, 77, i, precision=512).b)
    observed = np.bincount(b, minlength=5)[1:]
    assert stats.chisquare(observed).pvalue > 0.001


def test_orbit_a_digits_follow_haar_law():
    a = []
    for i in range(300):
        a.extend(orbit_digits(3, 100, 5, i, precision=512).a)
    a = np.array(a)
    ks = np.arange(1, 6)
    observed = np.array([np.sum(a == k) for k in ks] + [np.sum(a > 5)])
    probs = np.array([2 / 3**k for k in ks] + [3.0**-5])
    assert stats.chisquare(observed, probs * len(a)).pvalue > 0.001


@pytest.mark.parametrize("q,p", [(1.0, 2), (2.0, 2), (0.0, 3)])
def test_digit_model_estimates_bracket_haar(q, p):
    est = estimate_mean(q, p, SamplerMode.DIGIT_MODEL, samples=10_000, orbit_length=1_000, seed=9)
    assert abs(est.mean - haar_mean(q, p)) < 3 * est.stderr


def test_estimate_determinism_and_workers():
    a = estimate_mean(2.0, 3, "orbit", samples=40, orbit_length=50, seed=11)
    b = estimate_mean(2.0, 3, "orbit", samples=40, orbit_length=50, seed=11)
    c = estimate_mean(2.0, 3, "orbit", samples=40, orbit_length=50, seed=11, workers=2)
    assert a == b == c
    assert a.stderr >= 0 and a.digits_used <= 40 * 50


def test_stderr_scaling():
    small = estimate_mean(1.0, 2, samples=1_000, orbit_length=100, seed=1)
    big = estimate_mean(1.0, 2, samples=4_000, orbit_length=100, seed=2)
    assert small.stderr / big.stderr == pytest.approx(2.0, rel=0.2)


def test_single_sample_stderr():
    est = estimate_mean(1.0, 2, samples=1, orbit_length=10, seed=0)
    assert est.stderr == math.inf


def test_insufficient_trusted_digits():
    with pytest.raises(InsufficientTrustedDigits):
        estimate_mean(1.0, 2, SamplerMode.ORBIT, samples=20, orbit_length=200, precision=16)


def test_bad_arguments():
    with pytest.raises(ValueError):
        estimate_means([1.0], 2, samples=0)
    with pytest.raises(ValueError):
        estimate_means([1.0], 2, seed=-1)
    with pytest.raises(ValueError):
        estimate_means([1.0], 4)

"""Autocorrelation estimates, white-noise bands, and persistence timing.

Exactness tests use dyadic-rational inputs (small integers, power-of-two
lengths) so that every intermediate product and sum is representable and
the result is independent of summation order; equality against the
brute-force double loop is then genuinely exact, not a rounding accident.
"""

import numpy as np
import pytest
from scipy.signal import lfilter

import levycross as lx
from levycross.errors import DegenerateVarianceError, InvalidParameterError


def brute_force_acf(x, max_lag):
    n = len(x)
    mean = sum(float(v) for v in x) / n
    dev = [float(v) - mean for v in x]
    denom = 0.0
    for d in dev:
        denom += d * d
    denom /= n
    out = [1.0]
    for k in range(1, max_lag + 1):
        num = 0.0
        for t in range(n - k):
            num += dev[t] * dev[t + k]
        num /= n
        out.append(num / denom)
    return np.array(out)


def dyadic_instances(count, rng):
    for _ in range(count):
        n = int(rng.choice([8, 16, 32, 64]))
        x = rng.integers(-8, 9, n).astype(float)
        if np.ptp(x) == 0.0:
            continue
        yield x


# ---------------------------------------------------------------------------
# estimator correctness
# ---------------------------------------------------------------------------

def test_acf_matches_brute_force_exactly():
    rng = np.random.default_rng(41)
    checked = 0
    for x in dyadic_instances(100, rng):
        max_lag = min(10, len(x) - 1)
        got = lx.acf(x, max_lag).coefficients
        ref = brute_force_acf(x, max_lag)
        assert np.array_equal(got, ref), f"mismatch for {x!r}"
        checked += 1
    assert checked >= 95


def test_acf_lag_zero_is_exactly_one():
    x = np.random.default_rng(1).normal(size=1000)
    assert lx.acf(x, 20).coefficients[0] == 1.0


def test_acf_alternating_series():
    n = 200
    x = np.tile([1.0, -1.0], n // 2)
    got = lx.acf(x, 2).coefficients
    # mean is exactly 0, so rho(k) = -(n-k)/n with alternating sign
    assert got[1] == -(n - 1) / n
    assert got[2] == (n - 2) / n


def test_acf_biased_normalization_shrinks_with_lag():
    # divisor-n convention: a pure linear trend keeps rho < 1 strictly
    x = np.arange(64, dtype=float)
    got = lx.acf(x, 5).coefficients
    assert np.all(got[1:] < 1.0)
    assert np.all(np.diff(got) < 0.0)


def test_acf_affine_invariance_exact_on_dyadic_input():
    rng = np.random.default_rng(42)
    x = rng.integers(-8, 9, 64).astype(float)
    base = lx.acf(x, 8).coefficients
    moved = lx.acf(4.0 * x + 3.0, 8).coefficients
    np.testing.assert_array_equal(base, moved)


def test_acf_affine_invariance_float():
    x = np.random.default_rng(43).normal(size=5000)
    base = lx.acf(x, 10).coefficients
    moved = lx.acf(0.37 * x - 11.1, 10).coefficients
    np.testing.assert_allclose(moved, base, atol=1e-12)


def test_acf_ar1_recovers_geometric_decay():
    rho = 0.5
    rng = np.random.default_rng(44)
    eps = rng.normal(0.0, 1.0, 1_000_000)
    x = lfilter([1.0], [1.0, -rho], eps)
    got = lx.acf(x, 10).coefficients
    for k in range(1, 11):
        assert got[k] == pytest.approx(rho ** k, abs=0.01), f"lag {k}"


def test_acf_accepts_return_series():
    vals = np.random.default_rng(45).normal(size=500)
    a = lx.acf(lx.ReturnSeries(vals), 5).coefficients
    b = lx.acf(vals, 5).coefficients
    np.testing.assert_array_equal(a, b)


# ---------------------------------------------------------------------------
# confidence band
# ---------------------------------------------------------------------------

def test_band_default_multiplier():
    x = np.random.default_rng(2).normal(size=400)
    r = lx.acf(x, 10)
    assert r.band == pytest.approx(1.96 / 20.0)
    wide = lx.acf(x, 10, band_multiplier=2.58)
    assert wide.band == pytest.approx(2.58 / 20.0)
    np.testing.assert_array_equal(wide.coefficients, r.coefficients)


def test_band_coverage_on_white_noise():
    rng = np.random.default_rng(46)
    inside = 0
    total = 0
    for _ in range(100):
        x = rng.normal(0.0, 1.0, 2000)
        r = lx.acf(x, 100)
        inside += int(np.sum(np.abs(r.coefficients[1:]) < r.band))
        total += 100
    coverage = inside / total
    assert 0.935 <= coverage <= 0.965, f"coverage {coverage:.4f}"


# ---------------------------------------------------------------------------
# absolute-value series and clustering
# ---------------------------------------------------------------------------

def test_abs_acf_detects_volatility_clustering():
    """Slowly varying scale with sign-symmetric noise: raw returns look
    uncorrelated while their magnitudes stay correlated for many lags."""
    rng = np.random.default_rng(47)
    n = 100_000
    log_vol = lfilter([1.0], [1.0, -0.98], rng.normal(0.0, 0.2, n))
    r = np.exp(log_vol) * rng.normal(0.0, 1.0, n)
    raw = lx.acf(r, 20)
    mag = lx.abs_acf(r, 20)
    assert abs(raw.coefficients[1]) < 3.0 * raw.band
    assert mag.coefficients[1] > 10.0 * mag.band
    assert np.all(mag.coefficients[1:] > raw.coefficients[1:] - 1e-9)


def test_abs_acf_of_alternating_signs_is_degenerate():
    x = np.tile([0.5, -0.5], 100)
    with pytest.raises(DegenerateVarianceError):
        lx.abs_acf(x, 5)


def test_abs_acf_matches_acf_of_magnitudes():
    x = np.random.default_rng(48).normal(size=1000)
    np.testing.assert_array_equal(
        lx.abs_acf(x, 7).coefficients, lx.acf(np.abs(x), 7).coefficients
    )


# ---------------------------------------------------------------------------
# persistence time
# ---------------------------------------------------------------------------

def make_result(coefficients, band):
    coefficients = np.asarray(coefficients, dtype=float)
    n = round((1.96 / band) ** 2)
    return lx.AcfResult(
        lags=np.arange(coefficients.size),
        coefficients=coefficients,
        band=band,
        n=n,
    )


def test_persistence_documented_example():
    r = make_result([1.0, 0.1, 0.08, 0.01], 0.02)
    assert lx.persistence_time(r, 19.3) == pytest.approx(57.9)


def test_persistence_zero_when_lag_one_inside():
    r = make_result([1.0, 0.01, -0.003], 0.02)
    assert lx.persistence_time(r, 19.3) == 0.0
    # even if a later lag pokes out again, decorrelation already happened
    r2 = make_result([1.0, 0.01, 0.5], 0.02)
    assert lx.persistence_time(r2, 19.3) == 0.0


def test_persistence_caps_at_max_lag():
    r = make_result([1.0, 0.5, 0.4, 0.3], 0.02)
    assert lx.persistence_time(r, 10.0) == pytest.approx(30.0)


def test_persistence_tens_of_minutes_for_slow_magnitude_decay():
    # 150 lags of 19.3 s still above the band: 48+ minutes of memory
    coef = np.concatenate([[1.0], np.full(149, 0.05), [0.001]])
    r = make_result(coef, 0.02)
    assert lx.persistence_time(r, 19.3) == pytest.approx(150 * 19.3)
    assert lx.persistence_time(r, 19.3) / 60.0 > 48.0


def test_persistence_rejects_bad_spacing():
    r = make_result([1.0, 0.5], 0.02)
    with pytest.raises(InvalidParameterError):
        lx.persistence_time(r, 0.0)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_acf_rejects_short_series():
    with pytest.raises(InvalidParameterError):
        lx.acf(np.random.default_rng(3).normal(size=20), 25)


def test_acf_rejects_constant_series():
    with pytest.raises(DegenerateVarianceError):
        lx.acf(np.full(100, 2.0), 5)


def test_acf_result_validation():
    with pytest.raises(InvalidParameterError):
        lx.AcfResult(lags=np.array([0, 1]), coefficients=np.array([0.9, 0.1]),
                     band=0.1, n=100)
    with pytest.raises(InvalidParameterError):
        lx.AcfResult(lags=np.array([0, 1]), coefficients=np.array([1.0, 1.5]),
                     band=0.1, n=100)

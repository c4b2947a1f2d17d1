"""Aggregation sweeps and crossover detection logic."""

import logging
import math

import numpy as np
import pytest

import levycross as lx
from levycross.errors import InvalidParameterError, NoCrossoverError


def mk_fit(alpha, n=10_000, p_value=0.5):
    params = lx.StableParams(alpha, 0.0, 1.0, 0.0)
    return lx.FitResult(
        params=params,
        ks_statistic=0.01,
        p_value=p_value,
        reject_at_5pct=p_value < 0.05,
        sample_size=n,
    )


def mk_traj(level_alpha_pairs, mean_dt=None):
    return lx.AlphaTrajectory(
        points=tuple((lvl, mk_fit(a)) for lvl, a in level_alpha_pairs),
        mean_dt=mean_dt,
    )


# ---------------------------------------------------------------------------
# detection rules on synthetic trajectories
# ---------------------------------------------------------------------------

def test_reference_crossover_arithmetic():
    # level 2700 at 19.3 s per tick on a 23400 s trading day: 2.23 days
    traj = mk_traj([(1, 1.4), (100, 1.7), (2700, 1.995), (3000, 1.996)], mean_dt=19.3)
    report = lx.detect_crossover(traj, [])
    assert report.n_c == 2700
    assert report.crossover_seconds == pytest.approx(2700 * 19.3)
    assert round(report.crossover_trading_days, 2) == 2.23


def test_flat_gaussian_trajectory_crosses_at_first_level():
    traj = mk_traj([(1, 1.995), (10, 1.999), (100, 2.0)], mean_dt=1.0)
    report = lx.detect_crossover(traj, [])
    assert report.n_c == 1
    assert "alpha" in report.criterion


def test_touch_then_dip_does_not_count():
    traj = mk_traj([(1, 1.4), (10, 1.995), (50, 1.7), (100, 1.995), (500, 1.999)])
    report = lx.detect_crossover(traj, [])
    assert report.n_c == 100


def test_threshold_monotonicity():
    traj = mk_traj([(1, 1.4), (10, 1.95), (100, 1.97), (1000, 1.995)])
    lenient = lx.detect_crossover(traj, [], lx.CrossoverConfig(alpha_threshold=1.9))
    strict = lx.detect_crossover(traj, [], lx.CrossoverConfig(alpha_threshold=1.99))
    assert lenient.n_c <= strict.n_c
    assert lenient.n_c == 10 and strict.n_c == 1000


def test_no_crossover_raises_with_trajectory_attached():
    traj = mk_traj([(1, 1.4), (10, 1.5), (100, 1.6)])
    with pytest.raises(NoCrossoverError) as exc:
        lx.detect_crossover(traj, [])
    assert exc.value.trajectory is traj


def test_kurtosis_criterion_can_fire_first():
    traj = mk_traj([(1, 1.4), (10, 1.5), (100, 1.995), (1000, 1.999)])
    kurt = [(1, 80.0), (10, 3.0), (100, 0.8), (1000, 0.05)]
    report = lx.detect_crossover(traj, kurt)
    # kurtosis falls below 5% of 80 (= 4.0) persistently from level 10,
    # earlier than the alpha rule at level 100
    assert report.n_c == 10
    assert "kurtosis" in report.criterion
    assert report.kurtosis_points == tuple(kurt)


def test_both_criteria_together():
    traj = mk_traj([(1, 1.4), (10, 1.995)])
    kurt = [(1, 80.0), (10, 2.0)]
    report = lx.detect_crossover(traj, kurt)
    assert report.n_c == 10
    assert "together" in report.criterion


def test_negative_level_one_kurtosis_disables_that_rule():
    traj = mk_traj([(1, 1.4), (10, 1.995)])
    report = lx.detect_crossover(traj, [(1, -0.5), (10, -0.01)])
    assert "alpha" in report.criterion


def test_seconds_nan_without_spacing():
    report = lx.detect_crossover(mk_traj([(1, 1.995)]), [])
    assert math.isnan(report.crossover_seconds)
    assert math.isnan(report.crossover_trading_days)


def test_explicit_spacing_overrides_trajectory():
    traj = mk_traj([(1, 1.995)], mean_dt=19.3)
    report = lx.detect_crossover(traj, [], mean_dt=10.0)
    assert report.crossover_seconds == 10.0


# ---------------------------------------------------------------------------
# sweeps on actual series
# ---------------------------------------------------------------------------

def test_alpha_trajectory_recovers_generator_index():
    x = lx.sample(lx.StableParams(1.4, 0.0, 1.0, 0.0), 30_000, seed=50)
    traj = lx.alpha_trajectory(lx.ReturnSeries(x, mean_dt=19.3), [1, 10, 50])
    assert traj.levels == [1, 10, 50]
    assert traj.mean_dt == 19.3
    for a in traj.alphas:
        assert a == pytest.approx(1.4, abs=0.15)
    # untruncated stable input stays stable under aggregation
    for _, fit in traj.points:
        assert not fit.reject_at_5pct


def test_alpha_trajectory_gaussian_input_pegs_at_two():
    rng = np.random.default_rng(51)
    traj = lx.alpha_trajectory(lx.ReturnSeries(rng.normal(0.0, 1.0, 20_000)), [1, 10])
    for a in traj.alphas:
        assert 1.9 <= a <= 2.0


def test_trajectory_skips_thin_levels_with_warning(caplog):
    x = lx.sample(lx.StableParams(1.5, 0.0, 1.0, 0.0), 1000, seed=52)
    with caplog.at_level(logging.WARNING, logger="levycross.crossover"):
        traj = lx.alpha_trajectory(lx.ReturnSeries(x), [1, 500])
    assert traj.levels == [1]
    assert any("skipping level 500" in r.message for r in caplog.records)


def test_trajectory_all_levels_too_thin():
    x = lx.sample(lx.StableParams(1.5, 0.0, 1.0, 0.0), 1000, seed=53)
    with pytest.raises(InvalidParameterError):
        lx.alpha_trajectory(lx.ReturnSeries(x), [500, 900])


def test_trajectory_rejects_unsorted_levels():
    x = lx.sample(lx.StableParams(1.5, 0.0, 1.0, 0.0), 5000, seed=54)
    for bad in ([10, 1], [1, 1, 10], []):
        with pytest.raises(InvalidParameterError):
            lx.alpha_trajectory(lx.ReturnSeries(x), bad)


def test_kurtosis_trajectory_decays_inversely_with_level():
    p = lx.HardTLFParams(base=lx.StableParams(1.4, 0.0, 1.0, 0.0), cutoff_l=30.0)
    x = lx.sample_hard_tlf(p, 200_000, seed=55)
    kurt = dict(lx.kurtosis_trajectory(lx.ReturnSeries(x), [1, 10, 100]))
    # i.i.d. cumulant additivity: excess kurtosis scales as 1/m
    assert kurt[10] == pytest.approx(kurt[1] / 10.0, rel=0.5)
    assert kurt[100] == pytest.approx(kurt[1] / 100.0, rel=0.5)


# ---------------------------------------------------------------------------
# batch experiment
# ---------------------------------------------------------------------------

def test_truncation_experiment_deterministic():
    gen = lx.StableParams(1.4, 0.0, 1.0, 0.0)
    a = lx.truncation_experiment(gen, [40_000], 10.0, [1, 10], seed=9)
    b = lx.truncation_experiment(gen, [40_000], 10.0, [1, 10], seed=9)
    assert len(a) == len(b) == 1
    for (la, fa), (lb, fb) in zip(a[0].points, b[0].points):
        assert la == lb
        assert (fa.params.alpha, fa.params.beta, fa.params.gamma, fa.params.delta) == (
            fb.params.alpha, fb.params.beta, fb.params.gamma, fb.params.delta
        )
        assert fa.ks_statistic == fb.ks_statistic


def test_truncation_experiment_labels_and_lengths():
    gen = lx.StableParams(1.4, 0.0, 1.0, 0.0)
    out = lx.truncation_experiment(gen, [20_000, 40_000], math.inf, [1], seed=10)
    assert [t.source_label for t in out] == [
        "length=20000,n_std=inf", "length=40000,n_std=inf"
    ]
    assert [t.points[0][1].sample_size for t in out] == [20_000, 40_000]


def test_truncation_experiment_isolates_failing_cells(caplog):
    gen = lx.StableParams(1.4, 0.0, 1.0, 0.0)
    # the 50-point series cannot support any fit, the long one can
    with caplog.at_level(logging.WARNING, logger="levycross.crossover"):
        out = lx.truncation_experiment(gen, [50, 30_000], math.inf, [1], seed=11)
    assert len(out) == 1
    assert out[0].source_label.startswith("length=30000")
    assert any("failed" in r.message for r in caplog.records)


def test_truncation_experiment_all_cells_failing_raises():
    gen = lx.StableParams(1.4, 0.0, 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        lx.truncation_experiment(gen, [50, 60], math.inf, [1], seed=12)


def test_truncation_experiment_rejects_skewed_generator():
    with pytest.raises(InvalidParameterError):
        lx.truncation_experiment(
            lx.StableParams(1.4, 0.5, 1.0, 0.0), [1000], 10.0, [1], seed=13
        )


# ---------------------------------------------------------------------------
# configuration and containers
# ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(InvalidParameterError):
        lx.CrossoverConfig(alpha_threshold=2.5)
    with pytest.raises(InvalidParameterError):
        lx.CrossoverConfig(kurtosis_fraction=0.0)
    with pytest.raises(InvalidParameterError):
        lx.CrossoverConfig(min_points=2)
    with pytest.raises(InvalidParameterError):
        lx.CrossoverConfig(trading_day_seconds=-1.0)


def test_trajectory_container_validation():
    with pytest.raises(InvalidParameterError):
        lx.AlphaTrajectory(points=())
    with pytest.raises(InvalidParameterError):
        lx.AlphaTrajectory(points=((10, mk_fit(1.5)), (5, mk_fit(1.5))))


def test_default_level_sets():
    assert lx.DEFAULT_TABLE_LEVELS[0] == 1
    assert lx.DEFAULT_TABLE_LEVELS[-3:] == (1200, 2500, 2700)
    assert 10 in lx.DEFAULT_TABLE_LEVELS and 150 in lx.DEFAULT_TABLE_LEVELS
    assert lx.DEFAULT_DENSE_LEVELS[0] == 100 and lx.DEFAULT_DENSE_LEVELS[-1] == 3000
    merged = lx.DEFAULT_CROSSOVER_LEVELS
    assert merged == tuple(sorted(set(lx.DEFAULT_TABLE_LEVELS) | set(lx.DEFAULT_DENSE_LEVELS)))

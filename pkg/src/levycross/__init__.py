"""levycross: heavy-tailed return analysis.

Stable-law numerics (density, distribution, quantiles, sampling, MLE),
truncated Levy flights with hard and exponential cutoffs, a tick-data
log-return pipeline with temporal aggregation, detection of the
aggregation level where a truncated flight becomes Gaussian, and
autocorrelation diagnostics.  A batch CLI (``levycross``) wires the
pieces into reproducible runs.
"""

from .autocorr import AcfResult, abs_acf, acf, persistence_time
from .crossover import (
    DEFAULT_CROSSOVER_LEVELS,
    DEFAULT_DENSE_LEVELS,
    DEFAULT_TABLE_LEVELS,
    AlphaTrajectory,
    CrossoverConfig,
    CrossoverReport,
    alpha_trajectory,
    detect_crossover,
    kurtosis_trajectory,
    truncation_experiment,
)
from .errors import (
    BadRowError,
    DegenerateVarianceError,
    EmptySeriesError,
    InvalidParameterError,
    LevycrossError,
    NoCrossoverError,
    OptimizerFailureError,
    QuadratureFailureError,
    RejectionBudgetError,
)
from .fitting import (
    FitResult,
    KsResult,
    fit_and_test,
    fit_stable,
    ks_statistic,
    ks_statistic_from_cdf,
    ks_test,
    mc_p_value,
    quantile_initializer,
)
from .returns import (
    TRADING_DAY_SECONDS,
    ReturnSeries,
    SeriesStats,
    TickSeries,
    convolve_returns,
    dedup_ticks,
    excess_kurtosis,
    log_returns,
    series_stats,
)
from .stable import (
    ALPHA_NEAR_ONE,
    DensityGrid,
    StableGrid,
    StableParams,
    cdf,
    char_fn,
    pdf,
    sample,
    tail_density,
)
from .tlf import (
    HardTLFParams,
    KoponenParams,
    hard_tlf_pdf,
    hard_truncate,
    koponen_log_char_fn,
    koponen_pdf,
    koponen_variance,
    resolve_cutoff,
    sample_hard_tlf,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # stable
    "ALPHA_NEAR_ONE", "StableParams", "DensityGrid", "StableGrid",
    "char_fn", "pdf", "cdf", "tail_density", "sample",
    # tlf
    "HardTLFParams", "KoponenParams", "resolve_cutoff", "hard_truncate",
    "sample_hard_tlf", "hard_tlf_pdf", "koponen_log_char_fn",
    "koponen_variance", "koponen_pdf",
    # returns
    "TRADING_DAY_SECONDS", "TickSeries", "ReturnSeries", "SeriesStats",
    "dedup_ticks", "log_returns", "convolve_returns", "series_stats",
    "excess_kurtosis",
    # fitting
    "FitResult", "KsResult", "quantile_initializer", "fit_stable",
    "ks_statistic", "ks_statistic_from_cdf", "ks_test", "fit_and_test",
    "mc_p_value",
    # autocorr
    "AcfResult", "acf", "abs_acf", "persistence_time",
    # crossover
    "DEFAULT_TABLE_LEVELS", "DEFAULT_DENSE_LEVELS", "DEFAULT_CROSSOVER_LEVELS",
    "CrossoverConfig", "AlphaTrajectory", "CrossoverReport",
    "alpha_trajectory", "kurtosis_trajectory", "detect_crossover",
    "truncation_experiment",
    # errors
    "LevycrossError", "InvalidParameterError", "EmptySeriesError",
    "QuadratureFailureError", "RejectionBudgetError",
    "DegenerateVarianceError", "OptimizerFailureError", "NoCrossoverError",
    "BadRowError",
]

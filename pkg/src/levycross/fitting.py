"""Stable-law parameter estimation and Kolmogorov-Smirnov goodness of fit.

Fitting is numerical maximum likelihood: a fractile-ratio initializer
(quantile matching) followed by bounded L-BFGS-B over the full
four-parameter box, with the likelihood evaluated through the
table-backed density evaluator (:class:`~levycross.stable.StableGrid`).
The table interpolation error is below 1e-6 in log-density over the
body, which is far inside the Monte Carlo noise floor of any sample
this estimator is meant for; duplicate observations are aggregated
before evaluation so aggregated (tied) series cost one density lookup
per distinct value.

The K-S statistic is the exact sup-distance between the right-continuous
empirical CDF and the model CDF, evaluated at the sample points from
both sides of each step.  P-values come from the asymptotic Kolmogorov
distribution; a parametric bootstrap alternative (with refitting per
replicate, so the estimated-parameter bias is accounted for) is
available as :func:`mc_p_value`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .errors import (
    InvalidParameterError,
    OptimizerFailureError,
    QuadratureFailureError,
)
from .returns import excess_kurtosis  # re-exported: used standalone alongside fits
from .stable import StableGrid, StableParams, sample as stable_sample

__all__ = [
    "MIN_FIT_SIZE",
    "KsResult",
    "FitResult",
    "quantile_initializer",
    "fit_stable",
    "ks_statistic",
    "ks_statistic_from_cdf",
    "ks_test",
    "fit_and_test",
    "mc_p_value",
    "excess_kurtosis",
]

log = logging.getLogger(__name__)

MIN_FIT_SIZE = 100
_PENALTY = 1e10
_BOUNDS = ((0.101, 2.0), (-1.0, 1.0), (1e-4, 1e4), (-1e4, 1e4))

# Fractile-ratio lookup for the initial alpha guess (symmetric column):
# nu = (q95 - q05) / (q75 - q25) decreases monotonically with alpha.
_NU_TO_ALPHA_NU = np.array(
    [2.439, 2.5, 2.6, 2.7, 2.8, 3.0, 3.2, 3.5, 4.0, 5.0, 6.0, 8.0, 10.0, 15.0, 25.0]
)
_NU_TO_ALPHA_A = np.array(
    [2.0, 1.916, 1.808, 1.729, 1.664, 1.563, 1.484, 1.391, 1.279, 1.128, 1.029, 0.896, 0.818, 0.698, 0.593]
)


@dataclass(frozen=True)
class KsResult:
    """Goodness-of-fit fragment: statistic, asymptotic p, 5% decision."""

    statistic: float
    p_value: float
    reject_at_5pct: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.statistic <= 1.0:
            raise InvalidParameterError(f"K-S statistic outside [0,1]: {self.statistic}")
        if not 0.0 <= self.p_value <= 1.0:
            raise InvalidParameterError(f"p-value outside [0,1]: {self.p_value}")
        if self.reject_at_5pct != (self.p_value < 0.05):
            raise InvalidParameterError("reject_at_5pct inconsistent with p_value")


@dataclass(frozen=True)
class FitResult:
    """A fitted law plus its goodness of fit on the sample it was fit to."""

    params: StableParams
    ks_statistic: float
    p_value: float
    reject_at_5pct: bool
    sample_size: int
    n_conv: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.ks_statistic <= 1.0:
            raise InvalidParameterError(f"K-S statistic outside [0,1]: {self.ks_statistic}")
        if not 0.0 <= self.p_value <= 1.0:
            raise InvalidParameterError(f"p-value outside [0,1]: {self.p_value}")
        if self.reject_at_5pct != (self.p_value < 0.05):
            raise InvalidParameterError("reject_at_5pct inconsistent with p_value")
        if self.sample_size < 1 or self.n_conv < 1:
            raise InvalidParameterError("sample_size and n_conv must be >= 1")


def _as_sample(samples, minimum: int) -> np.ndarray:
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < minimum:
        raise InvalidParameterError(f"need at least {minimum} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise InvalidParameterError("sample contains non-finite values")
    return x


def quantile_initializer(samples) -> StableParams:
    """Fractile-ratio starting point for the MLE search.

    alpha from the (q95-q05)/(q75-q25) spread ratio, beta from the
    asymmetry of the outer fractiles around the median, gamma from the
    interquartile range, delta from the median.  Rough by design; it
    only needs to land in the right basin.
    """
    x = _as_sample(samples, 5)
    q05, q25, q50, q75, q95 = np.quantile(x, [0.05, 0.25, 0.5, 0.75, 0.95])
    iqr = q75 - q25
    outer = q95 - q05
    if iqr <= 0.0 or outer <= 0.0:
        raise InvalidParameterError("degenerate quantiles: sample has no spread")
    alpha0 = float(np.interp(outer / iqr, _NU_TO_ALPHA_NU, _NU_TO_ALPHA_A))
    beta0 = float(np.clip(2.0 * (q95 + q05 - 2.0 * q50) / outer, -0.9, 0.9))
    return StableParams(
        alpha=float(np.clip(alpha0, 0.3, 2.0)),
        beta=beta0,
        gamma=float(iqr / 1.9),
        delta=float(q50),
    )


def _affine_map_params(params: StableParams, mul: float, add: float) -> StableParams:
    """Parameters of mul*X + add when X follows ``params`` (mul > 0).

    alpha and beta are affine invariants; gamma scales; delta maps
    affinely, with the extra logarithmic location drift the alpha = 1
    parameterization picks up under scaling.
    """
    if not mul > 0.0:
        raise InvalidParameterError("scale multiplier must be positive")
    gamma = params.gamma * mul
    delta = params.delta * mul + add
    if params.effective_alpha == 1.0 and params.beta != 0.0:
        delta -= (2.0 / math.pi) * params.beta * gamma * math.log(mul)
    return StableParams(alpha=params.alpha, beta=params.beta, gamma=gamma, delta=delta)


def _neg_log_likelihood(theta: np.ndarray, values: np.ndarray, counts: np.ndarray) -> float:
    a, b, g, d = theta
    try:
        grid = StableGrid(StableParams(alpha=float(a), beta=float(b), gamma=float(g), delta=float(d)))
        lp = grid.logpdf(values)
    except (QuadratureFailureError, InvalidParameterError):
        return _PENALTY
    total = float(np.dot(counts, lp))
    if not math.isfinite(total):
        return _PENALTY
    return -total


def fit_stable(samples) -> StableParams:
    """Maximum likelihood stable fit.

    Deterministic: fixed initializer, fixed optimizer configuration, no
    randomness.  Raises OptimizerFailureError if the search cannot even
    match the initializer's likelihood.
    """
    x = _as_sample(samples, MIN_FIT_SIZE)

    # work in robust-standardized units so the box bounds are scale-free
    loc = float(np.median(x))
    q25, q75 = np.quantile(x, [0.25, 0.75])
    scale = float(q75 - q25) / 1.9
    if scale <= 0.0:
        scale = float(x.std())
    if scale <= 0.0:
        raise InvalidParameterError("sample has zero spread; no stable law fits it")
    y = (x - loc) / scale
    values, counts = np.unique(y, return_counts=True)
    counts = counts.astype(float)

    init = quantile_initializer(y)
    theta0 = np.array(
        [
            np.clip(init.alpha, _BOUNDS[0][0], _BOUNDS[0][1]),
            np.clip(init.beta, -1.0, 1.0),
            np.clip(init.gamma, _BOUNDS[2][0], _BOUNDS[2][1]),
            np.clip(init.delta, _BOUNDS[3][0], _BOUNDS[3][1]),
        ]
    )
    f0 = _neg_log_likelihood(theta0, values, counts)

    result = optimize.minimize(
        _neg_log_likelihood,
        theta0,
        args=(values, counts),
        method="L-BFGS-B",
        bounds=_BOUNDS,
        options={"maxiter": 200, "ftol": 1e-10},
    )
    if not math.isfinite(result.fun) or result.fun > f0:
        raise OptimizerFailureError(
            f"no likelihood improvement over the quantile initializer "
            f"(initial {-f0:.6g}, final {-float(result.fun):.6g}, "
            f"status={result.status}: {result.message})"
        )
    a, b, g, d = (float(v) for v in result.x)
    return _affine_map_params(StableParams(a, b, g, d), scale, loc)


def ks_statistic_from_cdf(cdf_values: np.ndarray) -> float:
    """Sup-distance given model CDF values at the sorted sample.

    Scans both sides of every empirical step:
    max_i of max(F_i - i/n, (i+1)/n - F_i).  Handles ties correctly, as
    the extremes over a tie group occur at its first and last indices.
    """
    f = np.asarray(cdf_values, dtype=float)
    n = f.size
    if n == 0:
        raise InvalidParameterError("need at least one observation")
    i = np.arange(n)
    d_plus = float(np.max((i + 1) / n - f))
    d_minus = float(np.max(f - i / n))
    return max(d_plus, d_minus, 0.0)


def ks_statistic(samples, params: StableParams) -> float:
    """K-S sup-distance of a sample against a stable law."""
    x = np.sort(_as_sample(samples, 1))
    return ks_statistic_from_cdf(StableGrid(params).cdf(x))


def ks_test(samples, params: StableParams) -> KsResult:
    """K-S test with the asymptotic Kolmogorov p-value.

    The asymptotic null ignores that ``params`` may have been estimated
    from the same data, which biases p upward; that convention is kept
    deliberately (see mc_p_value for the bootstrap alternative).
    """
    x = _as_sample(samples, 1)
    d = ks_statistic(x, params)
    p = float(special.kolmogorov(math.sqrt(x.size) * d))
    return KsResult(statistic=d, p_value=p, reject_at_5pct=bool(p < 0.05))


def fit_and_test(samples, *, n_conv: int = 1) -> FitResult:
    """Fit by MLE, then K-S test the sample against its own fit."""
    x = _as_sample(samples, MIN_FIT_SIZE)
    params = fit_stable(x)
    ks = ks_test(x, params)
    return FitResult(
        params=params,
        ks_statistic=ks.statistic,
        p_value=ks.p_value,
        reject_at_5pct=ks.reject_at_5pct,
        sample_size=int(x.size),
        n_conv=n_conv,
    )


def mc_p_value(samples, params: StableParams, *, n_replicates: int = 100, seed=0) -> float:
    """Parametric-bootstrap p-value with per-replicate refitting.

    Each replicate draws a same-size sample from ``params``, refits it,
    and records its K-S distance against its own fit, so the null
    distribution reflects estimated parameters.  Costs one full MLE per
    replicate.  Returns (1 + #{D_rep >= D_obs}) / (1 + n_replicates).
    """
    x = _as_sample(samples, MIN_FIT_SIZE)
    if n_replicates < 1:
        raise InvalidParameterError(f"n_replicates must be >= 1, got {n_replicates}")
    d_obs = ks_statistic(x, params)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    exceed = 0
    for k in range(n_replicates):
        rep = stable_sample(params, x.size, rng)
        try:
            rep_fit = fit_stable(rep)
        except OptimizerFailureError:
            log.warning("bootstrap replicate %d failed to fit; counted as exceedance", k)
            exceed += 1
            continue
        if ks_statistic(rep, rep_fit) >= d_obs:
            exceed += 1
    return (1.0 + exceed) / (1.0 + n_replicates)

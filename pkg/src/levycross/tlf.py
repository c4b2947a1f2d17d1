"""Truncated Levy flight models.

Two flavors of truncation are provided:

* a hard cutoff: the symmetric stable density is set to zero outside
  [-l, l] and rescaled by ``norm_c = 1 / (F(l) - F(-l))`` so it still
  integrates to one.  Sampling is exact rejection from the base stable
  sampler.
* a smooth exponential cutoff with log characteristic function

      log phi(t) = (c^alpha / cos(pi alpha / 2))
                   * [lambda^alpha
                      - (t^2 + lambda^2)^(alpha/2) * cos(alpha * arctan(|t|/lambda))]

  which is normalized (log phi(0) = 0), reduces to the symmetric stable
  log-CF -(c|t|)^alpha as lambda -> 0, and has all moments finite for
  lambda > 0.  alpha = 1 is excluded: the prefactor formula degenerates
  there and the stable limit it should reduce to is the Cauchy law,
  which this family does not reach continuously.

Cutoffs expressed in standard deviations resolve sigma from the sample
itself (ddof=1), never from the analytic base law.  ``hard_truncate``
with ``iterate=True`` re-estimates sigma on the survivors until the
cutoff stops moving, which gives a self-consistent truncation scale
that no longer depends on how heavy the pre-truncation tail was.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptySeriesError,
    InvalidParameterError,
    RejectionBudgetError,
)
from .stable import (
    ALPHA_NEAR_ONE,
    QUAD_TOL,
    DensityGrid,
    StableParams,
    _checked_quad,
    cdf as stable_cdf,
    pdf as stable_pdf,
    sample as stable_sample,
)

__all__ = [
    "HardTLFParams",
    "KoponenParams",
    "resolve_cutoff",
    "hard_truncate",
    "sample_hard_tlf",
    "hard_tlf_pdf",
    "koponen_log_char_fn",
    "koponen_variance",
    "koponen_pdf",
]

# give up on rejection sampling below this acceptance rate
_MIN_ACCEPT_RATE = 1e-6
_BATCH_MIN = 1024


@dataclass(frozen=True)
class HardTLFParams:
    """Symmetric stable law hard-truncated to [-cutoff_l, cutoff_l].

    ``norm_c`` is derived, not supplied: it rescales the restricted
    density back to unit mass and is therefore always > 1 (strictly,
    unless the cutoff already captures all mass to double precision).
    """

    base: StableParams
    cutoff_l: float
    norm_c: float = field(init=False)

    def __post_init__(self) -> None:
        if self.base.beta != 0.0:
            raise InvalidParameterError("hard truncation is defined for symmetric base laws")
        if not (np.isfinite(self.cutoff_l) and self.cutoff_l > 0.0):
            raise InvalidParameterError(f"cutoff_l must be finite and > 0, got {self.cutoff_l}")
        mass = stable_cdf(self.base, self.cutoff_l) - stable_cdf(self.base, -self.cutoff_l)
        if not 0.0 < mass <= 1.0:
            raise InvalidParameterError(
                f"cutoff_l={self.cutoff_l} leaves no probability mass to keep"
            )
        object.__setattr__(self, "norm_c", 1.0 / mass)

    @classmethod
    def from_n_std(
        cls, base: StableParams, n_std: float, reference: np.ndarray
    ) -> "HardTLFParams":
        """Resolve the cutoff as n_std sample standard deviations of a
        reference data set (ddof=1)."""
        reference = np.asarray(reference, dtype=float)
        if reference.size < 2:
            raise InvalidParameterError("reference sample needs at least 2 points")
        if not n_std > 0.0:
            raise InvalidParameterError(f"n_std must be > 0, got {n_std}")
        return cls(base=base, cutoff_l=float(n_std * reference.std(ddof=1)))

    @property
    def acceptance_rate(self) -> float:
        return 1.0 / self.norm_c


def resolve_cutoff(
    samples: np.ndarray,
    n_std: float,
    *,
    iterate: bool = False,
    max_iter: int = 200,
) -> float:
    """Cutoff implied by n_std sample standard deviations.

    Single pass by default.  With ``iterate=True`` the standard
    deviation is re-estimated on the surviving subsample and the cutoff
    recomputed until the surviving set stops changing.  The iteration
    shrinks monotonically (removing tail points can only lower sigma),
    so it terminates.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        raise EmptySeriesError("need at least 2 samples to estimate a cutoff")
    if not n_std > 0.0:
        raise InvalidParameterError(f"n_std must be > 0, got {n_std}")
    cutoff = float(n_std * x.std(ddof=1))
    if not iterate:
        return cutoff
    n_kept = x.size
    for _ in range(max_iter):
        kept = x[np.abs(x) <= cutoff]
        if kept.size < 2:
            raise EmptySeriesError("iterated truncation removed the whole sample")
        if kept.size == n_kept:
            return cutoff
        n_kept = kept.size
        cutoff = float(n_std * kept.std(ddof=1))
    return cutoff


def hard_truncate(
    samples: np.ndarray,
    n_std: float,
    *,
    iterate: bool = False,
) -> np.ndarray:
    """Keep the elements with |x| <= n_std * sigma(samples), order preserved.

    sigma is the sample standard deviation (ddof=1) of the input;
    n_std=inf is the identity.  Raises if nothing survives.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise EmptySeriesError("cannot truncate an empty sample")
    if math.isinf(n_std):
        return x.copy()
    cutoff = resolve_cutoff(x, n_std, iterate=iterate)
    out = x[np.abs(x) <= cutoff]
    if out.size == 0:
        raise EmptySeriesError(
            f"truncation at {cutoff:.6g} (= {n_std} sample std) removed every element"
        )
    return out


def sample_hard_tlf(params: HardTLFParams, n: int, seed) -> np.ndarray:
    """Draw n variates by rejection from the base stable law.

    Deterministic for a given integer seed.  Raises
    RejectionBudgetError when the configured cutoff keeps less than
    1e-6 of the base mass, since rejection would effectively never
    terminate.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if params.acceptance_rate < _MIN_ACCEPT_RATE:
        raise RejectionBudgetError(
            f"acceptance rate {params.acceptance_rate:.3g} below {_MIN_ACCEPT_RATE:g}; "
            "cutoff_l is pathologically small for this base law"
        )
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    out = np.empty(n, dtype=float)
    filled = 0
    while filled < n:
        want = n - filled
        batch = max(int(want * params.norm_c * 1.2), _BATCH_MIN)
        draw = stable_sample(params.base, batch, rng)
        keep = draw[np.abs(draw) <= params.cutoff_l]
        take = min(keep.size, want)
        out[filled : filled + take] = keep[:take]
        filled += take
    return out


def hard_tlf_pdf(params: HardTLFParams, xs: np.ndarray, *, tol: float = QUAD_TOL) -> DensityGrid:
    """Density and CDF of the hard-truncated law on the given abscissae."""
    xs = np.asarray(xs, dtype=float)
    base_grid = stable_pdf(params.base, xs, tol=tol)
    inside = np.abs(xs) <= params.cutoff_l
    pdf_vals = np.where(inside, params.norm_c * base_grid.pdf_values, 0.0)
    left_mass = stable_cdf(params.base, -params.cutoff_l, tol=tol)
    cdf_vals = np.clip(params.norm_c * (base_grid.cdf_values - left_mass), 0.0, 1.0)
    cdf_vals[xs < -params.cutoff_l] = 0.0
    cdf_vals[xs > params.cutoff_l] = 1.0
    cdf_vals = np.maximum.accumulate(cdf_vals)
    return DensityGrid(xs=xs, pdf_values=pdf_vals, cdf_values=cdf_vals)


@dataclass(frozen=True)
class KoponenParams:
    """Exponentially cut off symmetric Levy law.

    scale_c plays the role of the stable scale, alpha the stability
    index, cutoff_lambda the inverse length of the exponential taper
    (0 recovers the pure stable law).
    """

    scale_c: float
    alpha: float
    cutoff_lambda: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.scale_c) and self.scale_c > 0.0):
            raise InvalidParameterError(f"scale_c must be finite and > 0, got {self.scale_c}")
        if not 0.0 < self.alpha < 2.0:
            raise InvalidParameterError(f"alpha must lie in (0, 2), got {self.alpha}")
        if abs(self.alpha - 1.0) < ALPHA_NEAR_ONE:
            raise InvalidParameterError(
                "alpha = 1 (and its snap neighborhood) is excluded: the "
                "cos(pi alpha / 2) prefactor form does not reach the Cauchy limit"
            )
        if not (np.isfinite(self.cutoff_lambda) and self.cutoff_lambda >= 0.0):
            raise InvalidParameterError(
                f"cutoff_lambda must be finite and >= 0, got {self.cutoff_lambda}"
            )


def koponen_log_char_fn(params: KoponenParams, t) -> np.ndarray | complex:
    """Log characteristic function; real-valued and even in t.

    Returned as complex for interface uniformity with the stable CF,
    with identically zero imaginary part.
    """
    a = params.alpha
    lam = params.cutoff_lambda
    c_a = params.scale_c ** a
    tt = np.abs(np.asarray(t, dtype=float))
    radius = (tt * tt + lam * lam) ** (a / 2.0)
    angle = np.arctan2(tt, lam)  # arctan(|t|/lambda), well defined at lam = 0
    val = (c_a / math.cos(math.pi * a / 2.0)) * (lam ** a - radius * np.cos(a * angle))
    out = val.astype(complex)
    return out if np.ndim(t) else complex(out)


def koponen_variance(params: KoponenParams) -> float:
    """Variance -phi''(0); infinite when cutoff_lambda = 0."""
    a = params.alpha
    lam = params.cutoff_lambda
    if lam == 0.0:
        return math.inf
    return (
        params.scale_c ** a
        * a
        * (1.0 - a)
        * lam ** (a - 2.0)
        / math.cos(math.pi * a / 2.0)
    )


def _koponen_t_cutoff(params: KoponenParams) -> float:
    """Upper integration limit where the CF has decayed below ~1e-16."""
    upper = max(36.8 ** (1.0 / params.alpha) / params.scale_c, 1.0)
    for _ in range(60):
        if koponen_log_char_fn(params, upper).real < -36.8:
            return upper
        upper *= 2.0
    return upper


def koponen_pdf(params: KoponenParams, xs: np.ndarray, *, tol: float = QUAD_TOL) -> DensityGrid:
    """Density and CDF by Fourier inversion of the (real, even) CF.

    Density uses the cosine form f(x) = (1/pi) int_0^T phi(t) cos(tx) dt;
    the CDF uses the sine form F(x) = 1/2 + (1/pi) int_0^T phi(t) sin(tx)/t dt
    with the (linear in x) contribution of [0, 1e-8] added analytically.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or xs.size == 0:
        raise InvalidParameterError("xs must be a non-empty 1-d array")
    if np.any(np.diff(xs) <= 0.0):
        raise InvalidParameterError("xs must be strictly increasing")
    upper = _koponen_t_cutoff(params)
    head = 1e-8

    def cf(t: float) -> float:
        return koponen_log_char_fn(params, t).real

    pdf_vals = np.empty(xs.size)
    cdf_vals = np.empty(xs.size)
    for i, x in enumerate(xs):
        pdf_vals[i] = (
            _checked_quad(
                lambda t: math.exp(cf(t)), 0.0, upper, weight="cos", wvar=x, tol=tol
            )
            / math.pi
        )
        swing = _checked_quad(
            lambda t: math.exp(cf(t)) / t, head, upper, weight="sin", wvar=x, tol=tol
        )
        cdf_vals[i] = 0.5 + (swing + x * head) / math.pi
    pdf_vals = np.maximum(pdf_vals, 0.0)
    cdf_vals = np.maximum.accumulate(np.clip(cdf_vals, 0.0, 1.0))
    return DensityGrid(xs=xs, pdf_values=pdf_vals, cdf_values=cdf_vals)

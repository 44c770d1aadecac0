"""Distribution analytics for centrality samples.

Provides the skewness-threshold classifier separating real networks
(right-skewed, gamma1 > 1) from model-generated ones (centered), a
two-parameter Weibull maximum-likelihood fit with QQ data, and the
log-scale histogram fit whose slope captures the near-linear decay of
real ksi distributions before the heavy tail starts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError

REAL_LIKE = "real-like"
ARTIFICIAL_LIKE = "artificial-like"

SKEWNESS_THRESHOLD = 1.0


def skewness(values) -> float:
    """Moment coefficient of skewness with population (1/n) normalization.

    gamma1 = m3 / m2^(3/2) where m2, m3 are the central moments.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise DomainError("skewness needs at least 2 values")
    centered = x - x.mean()
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise DomainError("degenerate sample: zero variance")
    m3 = float(np.mean(centered**3))
    return m3 / m2**1.5


def classify(gamma1: float) -> str:
    """Threshold verdict: strictly above 1 reads as a real network."""
    return REAL_LIKE if gamma1 > SKEWNESS_THRESHOLD else ARTIFICIAL_LIKE


@dataclass(frozen=True)
class WeibullFit:
    shape: float
    scale: float
    loglik: float

    def quantile(self, q) -> np.ndarray | float:
        return weibull_quantile(q, self.shape, self.scale)


def weibull_quantile(q, shape: float, scale: float):
    """Inverse CDF: scale * (-ln(1 - q))^(1/shape)."""
    q = np.asarray(q, dtype=np.float64)
    out = scale * (-np.log1p(-q)) ** (1.0 / shape)
    return float(out) if out.ndim == 0 else out


def weibull_mle(values, tol: float = 1e-8, max_iter: int = 200) -> WeibullFit:
    """Two-parameter Weibull fit by maximum likelihood.

    The scale is eliminated analytically (scale^shape = mean(x^shape)),
    leaving a one-dimensional profile equation in the shape k:

        sum(x^k ln x) / sum(x^k) - mean(ln x) - 1/k = 0

    whose left side is strictly increasing in k, so the root is bracketed
    by doubling and then solved with Brent's method. Values are rescaled
    by their maximum inside the sums to avoid overflow of x^k.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 10:
        raise DomainError("weibull fit needs at least 10 values")
    if np.any(x <= 0.0):
        raise DomainError("weibull fit requires strictly positive values")
    if float(x.min()) == float(x.max()):
        raise DomainError("degenerate sample: all values equal")

    log_x = np.log(x)
    mean_log = float(log_x.mean())
    y = x / float(x.max())  # scale-free inside the profile equation

    def profile(k: float) -> float:
        yk = y**k
        return float(np.sum(yk * log_x) / np.sum(yk)) - mean_log - 1.0 / k

    lo, hi = 1e-3, 1.0
    iterations = 0
    while profile(hi) <= 0.0:
        hi *= 2.0
        iterations += 1
        if iterations > 60:
            raise ConvergenceError("weibull shape bracket expansion failed")
    shape = brentq(profile, lo, hi, xtol=1e-13, rtol=8.9e-16, maxiter=max_iter)
    residual = profile(shape)
    if abs(residual) > tol:
        raise ConvergenceError(f"weibull profile residual {residual:.3e} above {tol:.0e}")
    scale = float(x.max()) * float(np.mean(y**shape)) ** (1.0 / shape)
    n = x.size
    loglik = (
        n * (math.log(shape) - shape * math.log(scale))
        + (shape - 1.0) * float(log_x.sum())
        - float(np.sum((x / scale) ** shape))
    )
    return WeibullFit(float(shape), scale, float(loglik))


def qq_pairs(values, shape: float, scale: float) -> np.ndarray:
    """(theoretical, empirical) quantile pairs against a fitted Weibull.

    The sorted sample x_(i) is matched with the model quantile at
    probability (i - 0.5) / n. Returned as an (n, 2) array.
    """
    if shape <= 0 or scale <= 0:
        raise DomainError("shape and scale must be positive")
    x = np.sort(np.asarray(values, dtype=np.float64))
    q = (np.arange(1, x.size + 1) - 0.5) / x.size
    return np.column_stack([weibull_quantile(q, shape, scale), x])


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def histogram(values, bins: int) -> Histogram:
    x = np.asarray(values, dtype=np.float64)
    counts, edges = np.histogram(x, bins=bins, range=(float(x.min()), float(x.max())))
    return Histogram(edges=edges, counts=counts)


def sturges_bins(sample_size: int) -> int:
    return max(5, int(math.ceil(math.log2(sample_size) + 1))) if sample_size > 1 else 5


@dataclass(frozen=True)
class LogLinearFit:
    slope: float
    intercept: float
    r2: float
    tail_point: float
    bins_used: int


def log_histogram_fit(values, bins: int) -> LogLinearFit:
    """Least-squares line on (bin center, ln count) before the tail.

    The tail attachment point is exp(mean(ln values)), i.e. the geometric
    mean of the sample; only nonempty bins with center at or below it
    enter the fit. Needs at least 3 such bins.
    """
    x = np.asarray(values, dtype=np.float64)
    if bins < 5:
        raise DomainError("need at least 5 bins")
    if x.size < bins:
        raise DomainError("need at least as many values as bins")
    if np.any(x <= 0.0):
        raise DomainError("log fit requires strictly positive values")
    tail_point = float(np.exp(np.mean(np.log(x))))
    hist = histogram(x, bins)
    centers = hist.centers
    usable = (hist.counts > 0) & (centers <= tail_point)
    if int(usable.sum()) < 3:
        raise DomainError(
            f"only {int(usable.sum())} usable bins before the tail point; need >= 3"
        )
    cx = centers[usable]
    cy = np.log(hist.counts[usable].astype(np.float64))
    slope, intercept = np.polyfit(cx, cy, 1)
    predicted = slope * cx + intercept
    ss_res = float(np.sum((cy - predicted) ** 2))
    ss_tot = float(np.sum((cy - cy.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-24 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return LogLinearFit(float(slope), float(intercept), float(r2), tail_point, int(usable.sum()))


@dataclass(frozen=True)
class DistributionSummary:
    """Everything the analysis pipeline reports about one sample."""

    sample_size: int
    skewness: float | None
    verdict: str | None
    mean_log: float | None
    tail_point: float | None
    weibull: WeibullFit | None
    histogram: Histogram
    qq: np.ndarray | None
    loglinear: LogLinearFit | None
    shifted: bool = False

    def to_dict(self) -> dict:
        return {
            "sample_size": self.sample_size,
            "skewness": self.skewness,
            "verdict": self.verdict,
            "mean_log": self.mean_log,
            "tail_point": self.tail_point,
            "shifted": self.shifted,
            "weibull": None
            if self.weibull is None
            else {
                "shape": self.weibull.shape,
                "scale": self.weibull.scale,
                "loglik": self.weibull.loglik,
            },
            "histogram": {
                "edges": self.histogram.edges.tolist(),
                "counts": self.histogram.counts.tolist(),
            },
            "loglinear": None
            if self.loglinear is None
            else {
                "slope": self.loglinear.slope,
                "intercept": self.loglinear.intercept,
                "r2": self.loglinear.r2,
                "tail_point": self.loglinear.tail_point,
                "bins_used": self.loglinear.bins_used,
            },
        }


def summarize(values, bins: int | None = None, shift: bool = False) -> DistributionSummary:
    """Build the full summary, tolerating per-component failures.

    Components that cannot be computed for the given sample (degenerate
    variance, too few usable bins, ...) are reported as None instead of
    aborting the whole analysis. With `shift`, the Weibull/QQ part is
    fitted to values - 1 (non-positive leftovers dropped); all other
    statistics stay on the raw values.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise DomainError("summary needs at least 2 values")
    if bins is None:
        bins = sturges_bins(x.size)

    try:
        gamma1 = skewness(x)
        verdict = classify(gamma1)
    except DomainError:
        gamma1 = None
        verdict = None

    positive = x[x > 0]
    mean_log = float(np.mean(np.log(positive))) if positive.size == x.size else None
    tail_point = float(np.exp(mean_log)) if mean_log is not None else None

    fit_target = x - 1.0 if shift else x
    fit_target = fit_target[fit_target > 0]
    try:
        wb = weibull_mle(fit_target)
        qq = qq_pairs(fit_target, wb.shape, wb.scale)
    except (DomainError, ConvergenceError):
        wb = None
        qq = None

    try:
        loglinear = log_histogram_fit(x, bins)
    except DomainError:
        loglinear = None

    return DistributionSummary(
        sample_size=int(x.size),
        skewness=gamma1,
        verdict=verdict,
        mean_log=mean_log,
        tail_point=tail_point,
        weibull=wb,
        histogram=histogram(x, bins),
        qq=qq,
        loglinear=loglinear,
        shifted=shift,
    )

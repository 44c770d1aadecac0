"""Calibration between average normalized ksi and the attachment ratio.

In the preferential-attachment model the average normalized ksi
coefficient depends on m/n but not on n itself, and increases with m/n.
The curve built here samples that correspondence on a grid, fits a
monotone function to it (a nonnegative-weight sum of five beta CDFs,
with a piecewise-linear backbone as fallback), and inverts it to recover
the attachment parameter m that would best model a given network.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares
from scipy.special import betainc

from .centrality import NORMALIZED_KSI, centrality_all
from .errors import CalibrationError, DomainError
from .generators import barabasi_albert, derive_seed

N_BETA_TERMS = 5
INVERT_TOL = 1e-10


@dataclass(frozen=True)
class CurvePoint:
    m: int
    m_over_n: float
    xi_hat_mean: float
    xi_hat_stderr: float
    n_used: int
    reps: int


@dataclass(frozen=True)
class BetaMixFit:
    """Weighted sum of beta CDFs; nonnegative weights keep it monotone."""

    weights: tuple[float, ...]
    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    rmse: float
    converged: bool

    def __call__(self, x) -> np.ndarray | float:
        x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
        total = np.zeros_like(x)
        for w, a, b in zip(self.weights, self.alphas, self.betas):
            total = total + w * betainc(a, b, x)
        return float(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class CalibrationCurve:
    points: tuple[CurvePoint, ...]
    fit: BetaMixFit | None
    seed: int

    @property
    def x_range(self) -> tuple[float, float]:
        return self.points[0].m_over_n, self.points[-1].m_over_n

    @property
    def value_range(self) -> tuple[float, float]:
        means = [p.xi_hat_mean for p in self.points]
        return min(means), max(means)

    def backbone(self):
        """Monotone evaluator: the beta fit if it converged, else the
        isotonic piecewise-linear interpolant of the sampled means."""
        if self.fit is not None and self.fit.converged:
            return self.fit
        xs = np.array([p.m_over_n for p in self.points])
        ys = _isotonic(np.array([p.xi_hat_mean for p in self.points]))
        return lambda x: np.interp(x, xs, ys)

    def evaluate(self, x) -> np.ndarray | float:
        return self.backbone()(x)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "points": [
                {
                    "m": p.m,
                    "m_over_n": p.m_over_n,
                    "xi_hat_mean": p.xi_hat_mean,
                    "xi_hat_stderr": p.xi_hat_stderr,
                    "n_used": p.n_used,
                    "reps": p.reps,
                }
                for p in self.points
            ],
            "fit": None
            if self.fit is None
            else {
                "weights": list(self.fit.weights),
                "alphas": list(self.fit.alphas),
                "betas": list(self.fit.betas),
                "rmse": self.fit.rmse,
                "converged": self.fit.converged,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CalibrationCurve":
        points = tuple(
            CurvePoint(
                m=int(p["m"]),
                m_over_n=float(p["m_over_n"]),
                xi_hat_mean=float(p["xi_hat_mean"]),
                xi_hat_stderr=float(p["xi_hat_stderr"]),
                n_used=int(p["n_used"]),
                reps=int(p["reps"]),
            )
            for p in data["points"]
        )
        fit = None
        if data.get("fit") is not None:
            f = data["fit"]
            fit = BetaMixFit(
                weights=tuple(f["weights"]),
                alphas=tuple(f["alphas"]),
                betas=tuple(f["betas"]),
                rmse=float(f["rmse"]),
                converged=bool(f["converged"]),
            )
        return cls(points=points, fit=fit, seed=int(data.get("seed", 0)))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "CalibrationCurve":
        return cls.from_dict(json.loads(Path(path).read_text()))


def sample_xi_hat(n: int, m: int, reps: int, seed: int, threads: int = 1) -> tuple[float, float]:
    """Mean and standard error of the average normalized ksi over an ensemble."""
    if reps < 1:
        raise DomainError("reps must be >= 1")
    samples = _sample_point(n, m, reps, seed, grid_index=0, threads=threads)
    return _mean_stderr(samples)


def _sample_point(n: int, m: int, reps: int, seed: int, grid_index: int, threads: int) -> np.ndarray:
    def one(rep: int) -> float:
        g = barabasi_albert(n, m, derive_seed(seed, grid_index, rep))
        return centrality_all(g, NORMALIZED_KSI).average

    if threads <= 1 or reps == 1:
        return np.array([one(r) for r in range(reps)])
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.array(list(pool.map(one, range(reps))))


def _mean_stderr(samples: np.ndarray) -> tuple[float, float]:
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.0
    return mean, float(samples.std(ddof=1) / math.sqrt(samples.size))


def default_m_grid(n: int, count: int = 15) -> list[int]:
    """`count` distinct attachment values, roughly log-spaced in [1, n-1]."""
    if n - 1 < count:
        raise DomainError(f"cannot place {count} distinct m values below n={n}")
    targets = np.geomspace(1, n - 1, count)
    grid: list[int] = []
    for t in targets:
        v = max(int(round(t)), (grid[-1] + 1) if grid else 1)
        grid.append(min(v, n - 1))
    return grid


def build_curve(
    n: int,
    m_grid: list[int] | None = None,
    reps: int = 20,
    seed: int = 0,
    threads: int = 1,
) -> CalibrationCurve:
    """Sample the correspondence on a grid and fit the monotone model.

    Raises CalibrationError when consecutive sampled means decrease by
    more than twice their combined standard errors, which would mean the
    monotone correspondence does not hold at this sampling effort.
    """
    if m_grid is None:
        m_grid = default_m_grid(n)
    if list(m_grid) != sorted(set(int(m) for m in m_grid)):
        raise DomainError("m_grid must be strictly increasing")
    if m_grid[-1] >= n or m_grid[0] < 1:
        raise DomainError("m_grid values must lie in [1, n-1]")

    points = []
    for k, m in enumerate(m_grid):
        samples = _sample_point(n, int(m), reps, seed, grid_index=k, threads=threads)
        mean, stderr = _mean_stderr(samples)
        points.append(CurvePoint(int(m), m / n, mean, stderr, n, reps))

    for prev, cur in zip(points, points[1:]):
        slack = 2.0 * (prev.xi_hat_stderr + cur.xi_hat_stderr)
        if cur.xi_hat_mean < prev.xi_hat_mean - slack:
            raise CalibrationError(
                f"sampled means not monotone: m={cur.m} gives {cur.xi_hat_mean:.6f} "
                f"< {prev.xi_hat_mean:.6f} at m={prev.m} beyond 2*stderr"
            )

    fit = _fit_beta_mixture(points)
    return CalibrationCurve(points=tuple(points), fit=fit, seed=seed)


def _fit_beta_mixture(points: list[CurvePoint]) -> BetaMixFit | None:
    xs = np.array([p.m_over_n for p in points])
    ys = np.array([p.xi_hat_mean for p in points])
    top = float(ys.max())

    def unpack(theta):
        w = theta[:N_BETA_TERMS]
        a = theta[N_BETA_TERMS : 2 * N_BETA_TERMS]
        b = theta[2 * N_BETA_TERMS :]
        return w, a, b

    def residuals(theta):
        w, a, b = unpack(theta)
        model = np.zeros_like(xs)
        for j in range(N_BETA_TERMS):
            model = model + w[j] * betainc(a[j], b[j], xs)
        return model - ys

    # spread the initial CDF rise locations across the sampled x range
    locations = np.geomspace(max(xs[0], 1e-4), max(xs[-1], 2e-4), N_BETA_TERMS)
    a0 = np.full(N_BETA_TERMS, 2.0)
    b0 = np.clip(a0 * (1.0 - locations) / np.maximum(locations, 1e-6), 1e-2, 1e3)
    w0 = np.full(N_BETA_TERMS, top / N_BETA_TERMS)
    theta0 = np.concatenate([w0, a0, b0])
    lower = np.concatenate(
        [np.zeros(N_BETA_TERMS), np.full(2 * N_BETA_TERMS, 1e-2)]
    )
    upper = np.concatenate(
        [np.full(N_BETA_TERMS, 2.0), np.full(2 * N_BETA_TERMS, 1e3)]
    )
    try:
        result = least_squares(
            residuals, theta0, bounds=(lower, upper), method="trf", max_nfev=5000
        )
    except Exception:
        return None
    w, a, b = unpack(result.x)
    rmse = float(np.sqrt(np.mean(residuals(result.x) ** 2)))
    return BetaMixFit(
        weights=tuple(float(v) for v in w),
        alphas=tuple(float(v) for v in a),
        betas=tuple(float(v) for v in b),
        rmse=rmse,
        converged=bool(result.success),
    )


def _isotonic(y: np.ndarray) -> np.ndarray:
    """Pool-adjacent-violators: nearest nondecreasing sequence to y."""
    values = y.astype(np.float64).tolist()
    weights = [1.0] * len(values)
    merged: list[list[float]] = []
    for v, w in zip(values, weights):
        merged.append([v, w])
        while len(merged) > 1 and merged[-2][0] > merged[-1][0]:
            v2, w2 = merged.pop()
            v1, w1 = merged.pop()
            merged.append([(v1 * w1 + v2 * w2) / (w1 + w2), w1 + w2])
        # fall through once ordered
    out = []
    for v, w in merged:
        out.extend([v] * int(w))
    return np.array(out)


def invert(curve: CalibrationCurve, xi_hat_target: float, n_target: int) -> int:
    """Recover m for a target average normalized ksi by bisection.

    The target must lie within the sampled value range; the returned m is
    rounded to the nearest integer (ties toward the larger, denser model)
    and clamped to [1, n_target - 1].
    """
    if n_target < 2:
        raise DomainError("n_target must be >= 2")
    lo_val, hi_val = curve.value_range
    if not lo_val <= xi_hat_target <= hi_val:
        raise DomainError(
            f"target {xi_hat_target:.6f} outside the calibrated range "
            f"[{lo_val:.6f}, {hi_val:.6f}]"
        )
    f = curve.backbone()
    xlo, xhi = curve.x_range
    while xhi - xlo > INVERT_TOL:
        mid = 0.5 * (xlo + xhi)
        if float(f(mid)) < xi_hat_target:
            xlo = mid
        else:
            xhi = mid
    ratio = 0.5 * (xlo + xhi)
    m = int(math.floor(ratio * n_target + 0.5))
    return max(1, min(n_target - 1, m))


def replicate_rmse(curve: CalibrationCurve, model) -> float:
    """Root mean squared error of `model` against the raw replicate values.

    Uses the stored per-point mean and standard error: the expected
    squared deviation of a replicate from model(x) decomposes into the
    model's bias at the point plus the within-point population variance.
    """
    total = 0.0
    for p in curve.points:
        bias = float(model(p.m_over_n)) - p.xi_hat_mean
        var_pop = p.xi_hat_stderr**2 * max(p.reps - 1, 0)
        total += bias**2 + var_pop
    return math.sqrt(total / len(curve.points))


def max_vertical_gap(a: CalibrationCurve, b: CalibrationCurve, samples: int = 200) -> float:
    """Largest |a(x) - b(x)| over the overlap of the two sampled ranges."""
    lo = max(a.x_range[0], b.x_range[0])
    hi = min(a.x_range[1], b.x_range[1])
    if hi <= lo:
        raise DomainError("curves have no overlapping m/n range")
    grid = np.linspace(lo, hi, samples)
    fa, fb = a.backbone(), b.backbone()
    return float(np.max(np.abs(np.asarray(fa(grid)) - np.asarray(fb(grid)))))

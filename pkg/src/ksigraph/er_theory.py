"""Closed-form expectations for G(n, p) and their Monte-Carlo checks.

For a node of an Erdos-Renyi graph G(n, p):

    E[boundary edges]   = p (n-1) (1 + p (1-p) (n-2))
    E[normalized ksi]   = p (1 - (1-p)^(n-1)) + (1 - p^n) / n

and for the sparse regime p = lambda/n the expectation behaves like
(1 + lambda (1 - exp(-lambda))) / n up to O(1/n^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centrality import NORMALIZED_KSI, centrality_all
from .errors import DomainError
from .generators import derive_seed, erdos_renyi
from .graph import boundary_edge_counts


def _pow_carefully(base: float, exponent: int) -> float:
    """base**exponent for base in [0, 1], exact at the endpoints.

    Goes through exp/log so that e.g. (1-p)^(n-1) underflows cleanly to
    zero instead of losing the 1-p cancellation for p close to 1.
    """
    if exponent == 0:
        return 1.0
    if base == 0.0:
        return 0.0
    if base == 1.0:
        return 1.0
    return math.exp(exponent * math.log(base))


def expected_boundary_edges(n: int, p: float) -> float:
    """Expected boundary-edge count of a node of G(n, p)."""
    _check_np(n, p)
    return p * (n - 1) * (1.0 + p * (1.0 - p) * (n - 2))


def expected_normalized_ksi(n: int, p: float) -> float:
    """Expected normalized ksi of a node of G(n, p); also the expected average."""
    _check_np(n, p)
    one_minus_p_pow = _pow_carefully(1.0 - p, n - 1)
    p_pow = _pow_carefully(p, n)
    return p * (1.0 - one_minus_p_pow) + (1.0 - p_pow) / n


def sparse_asymptotic(lam: float, n: int) -> float:
    """Leading term of E[average normalized ksi] for G(n, lambda/n)."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if n < 1:
        raise DomainError("n must be >= 1")
    return (1.0 + lam * (1.0 - math.exp(-lam))) / n


def _check_np(n: int, p: float) -> None:
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    reps: int

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.mean - target) <= sigmas * self.stderr


def _ensemble(n: int, p: float, reps: int, seed: int, statistic) -> MonteCarloResult:
    if reps < 2:
        raise DomainError("reps must be >= 2 to estimate a standard error")
    samples = np.empty(reps, dtype=np.float64)
    for r in range(reps):
        g = erdos_renyi(n, p, derive_seed(seed, r))
        samples[r] = statistic(g)
    stderr = float(samples.std(ddof=1) / math.sqrt(reps))
    return MonteCarloResult(float(samples.mean()), stderr, reps)


def simulate_normalized_ksi(n: int, p: float, reps: int, seed: int = 0) -> MonteCarloResult:
    """Ensemble mean and standard error of the average normalized ksi."""
    _check_np(n, p)
    return _ensemble(n, p, reps, seed, lambda g: centrality_all(g, NORMALIZED_KSI).average)


def simulate_boundary_edges(n: int, p: float, reps: int, seed: int = 0) -> MonteCarloResult:
    """Ensemble mean and standard error of the per-node boundary-edge count."""
    _check_np(n, p)
    return _ensemble(n, p, reps, seed, lambda g: float(boundary_edge_counts(g).mean()))

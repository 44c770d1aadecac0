"""Ksi-centrality and its normalized variant.

For a node i with neighborhood N(i), let b_i be the number of edges with
exactly one endpoint in N(i) (edges back to i included, since i lies
outside its own neighborhood). Then

    ksi(i)            = b_i / d_i                 (1 if d_i = 0)
    normalized_ksi(i) = b_i / (d_i * (n - d_i))   (1/n if d_i = 0)

Both are ratios of integer counts; the counts are kept alongside the
float values so callers can test exact equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .graph import Graph, boundary_edge_count, boundary_edge_counts

KSI = "ksi"
NORMALIZED_KSI = "normalized_ksi"

DENSE_LIMIT = 5000


@dataclass(frozen=True)
class CentralityVector:
    """Per-node centrality values plus the exact integer counts behind them."""

    kind: str
    values: np.ndarray
    boundary: np.ndarray
    degrees: np.ndarray
    n: int

    def __post_init__(self):
        self.values.setflags(write=False)
        self.boundary.setflags(write=False)
        self.degrees.setflags(write=False)

    @property
    def average(self) -> float:
        return float(self.values.mean())

    def exact_value(self, i: int) -> Fraction:
        d = int(self.degrees[i])
        b = int(self.boundary[i])
        if self.kind == KSI:
            return Fraction(b, d) if d > 0 else Fraction(1)
        if d > 0:
            return Fraction(b, d * (self.n - d))
        return Fraction(1, self.n)

    def exact_average(self) -> Fraction:
        return sum((self.exact_value(i) for i in range(self.n)), Fraction(0)) / self.n


def _values_from_counts(kind: str, boundary: np.ndarray, degrees: np.ndarray, n: int) -> np.ndarray:
    isolated = degrees == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == KSI:
            values = boundary / degrees
            values[isolated] = 1.0
        elif kind == NORMALIZED_KSI:
            values = boundary / (degrees * (n - degrees))
            values[isolated] = 1.0 / n
        else:
            raise DomainError(f"unknown centrality kind {kind!r}")
    return values


def ksi(g: Graph, i: int) -> float:
    """Ksi-centrality of one node."""
    d = g.degree(i)
    if d == 0:
        return 1.0
    return boundary_edge_count(g, i) / d


def normalized_ksi(g: Graph, i: int) -> float:
    """Normalized ksi-centrality of one node; always in (0, 1]."""
    d = g.degree(i)
    if d == 0:
        return 1.0 / g.n
    return boundary_edge_count(g, i) / (d * (g.n - d))


def centrality_all(g: Graph, kind: str = KSI, threads: int = 1) -> CentralityVector:
    """Centrality for every node via neighbor iteration.

    This is the sparse production path: cost is the sum over nodes of
    their neighbors' degrees. Values are independent of `threads`.
    """
    if kind not in (KSI, NORMALIZED_KSI):
        raise DomainError(f"unknown centrality kind {kind!r}")
    boundary = boundary_edge_counts(g, threads=threads)
    degrees = g.degrees
    values = _values_from_counts(kind, boundary, degrees, g.n)
    return CentralityVector(kind, values, boundary, degrees, g.n)


def ksi_matrix(g: Graph, dense_limit: int = DENSE_LIMIT) -> CentralityVector:
    """Ksi for every node from dense adjacency-matrix products.

    Uses ksi(i) = (A^2 Abar)_ii / (A^2)_ii with Abar the complement
    matrix (ones everywhere, including the diagonal, minus A). All
    entries are integer counts below 2^53, so float64 products are
    exact. Serves as an independent cross-check of the sparse path;
    refuses graphs above `dense_limit` nodes.
    """
    n = g.n
    if n > dense_limit:
        raise DomainError(
            f"n={n} exceeds dense limit {dense_limit}; use centrality_all for large graphs"
        )
    a = g.dense_adjacency(dtype=np.float64)
    a2 = a @ a
    abar = 1.0 - a
    numerators = np.einsum("ij,ji->i", a2, abar)
    boundary = np.rint(numerators).astype(np.int64)
    degrees = np.rint(np.diagonal(a2)).astype(np.int64)
    values = _values_from_counts(KSI, boundary, degrees, n)
    return CentralityVector(KSI, values, boundary, degrees, n)


def average_ksi(g: Graph, threads: int = 1) -> float:
    return centrality_all(g, KSI, threads=threads).average


def average_normalized_ksi(g: Graph, threads: int = 1) -> float:
    return centrality_all(g, NORMALIZED_KSI, threads=threads).average

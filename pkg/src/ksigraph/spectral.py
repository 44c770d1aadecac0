"""Exact spectral and expansion lower bounds on the ksi centralities.

On a connected graph with Laplacian spectrum 0 = l1 < l2 <= ... and
Cheeger number h, every node satisfies

    normalized_ksi(i) >= l2 / n
    ksi(i)            >= h                      when d_i <= n/2
    normalized_ksi(i) >= h / (n - d_i)          when d_i <= n/2
    normalized_ksi(i) >= h / d_i                otherwise

and the average normalized ksi is also >= l2 / n. Everything here is
computed exactly (dense eigensolve, exhaustive cut enumeration), which
keeps violations falsifiable; both computations are therefore size-capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.linalg

from .centrality import KSI, NORMALIZED_KSI, centrality_all
from .errors import DomainError
from .graph import Graph, is_connected

EIG_LIMIT = 2000
CHEEGER_LIMIT = 22

# comparisons allow the eigensolver's relative tolerance
_REL_SLACK = 1e-9


def laplacian(g: Graph) -> np.ndarray:
    a = g.dense_adjacency(dtype=np.float64)
    return np.diag(g.degrees.astype(np.float64)) - a


def algebraic_connectivity(g: Graph, limit: int = EIG_LIMIT) -> float:
    """Second-smallest Laplacian eigenvalue via a dense symmetric solve."""
    if g.n > limit:
        raise DomainError(f"n={g.n} exceeds dense eigensolver limit {limit}")
    if g.n < 2:
        raise DomainError("algebraic connectivity needs at least 2 nodes")
    vals = scipy.linalg.eigvalsh(laplacian(g), subset_by_index=(1, 1))
    return float(vals[0])


def cheeger_number(g: Graph, limit: int = CHEEGER_LIMIT) -> float:
    """min over nonempty S with |S| <= n/2 of cut(S) / |S|, exhaustively.

    Enumerates all 2^n subsets as bitmasks, with the cut sizes evaluated
    by vectorized popcounts, so the result is exact rather than an
    approximation bound.
    """
    n = g.n
    if n > limit:
        raise DomainError(f"n={n} exceeds exhaustive-cut limit {limit}")
    if n < 2:
        raise DomainError("Cheeger number needs at least 2 nodes")
    masks = np.arange(1, 1 << n, dtype=np.uint32)
    sizes = _popcount(masks)
    neighbor_bits = np.zeros(n, dtype=np.uint32)
    for i in range(n):
        bits = 0
        for j in g.neighbors(i):
            bits |= 1 << int(j)
        neighbor_bits[i] = bits
    cut = np.zeros(masks.size, dtype=np.int64)
    outside = np.bitwise_not(masks)
    for i in range(n):
        member = (masks >> np.uint32(i)) & np.uint32(1)
        crossing = _popcount(np.bitwise_and(outside, neighbor_bits[i]))
        cut += member.astype(np.int64) * crossing.astype(np.int64)
    keep = sizes <= n // 2
    ratios = cut[keep] / sizes[keep].astype(np.float64)
    return float(ratios.min())


def cheeger_number_reference(g: Graph) -> float:
    """Independent re-implementation enumerating subsets by size.

    Walks itertools.combinations smallest-size-first and counts crossing
    edges with set membership; used as a self-consistency oracle for the
    bitmask version on small graphs.
    """
    n = g.n
    if n < 2:
        raise DomainError("Cheeger number needs at least 2 nodes")
    if n > 16:
        raise DomainError("reference implementation capped at 16 nodes")
    edge_list = list(g.edges())
    best = float("inf")
    for size in range(1, n // 2 + 1):
        for subset in combinations(range(n), size):
            inside = set(subset)
            cut = sum(1 for u, v in edge_list if (u in inside) != (v in inside))
            best = min(best, cut / size)
    return best


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr)


@dataclass(frozen=True)
class NodeBounds:
    node: int
    degree: int
    ksi: float
    normalized_ksi: float
    cheeger_bound_applicable: bool
    bounds_satisfied: bool


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lambda2: float
    cheeger: float
    nodes: tuple[NodeBounds, ...]
    average_normalized_ksi: float
    average_bound_satisfied: bool

    @property
    def all_satisfied(self) -> bool:
        return self.average_bound_satisfied and all(r.bounds_satisfied for r in self.nodes)

    def violations(self) -> list[int]:
        return [r.node for r in self.nodes if not r.bounds_satisfied]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda2": self.lambda2,
            "cheeger": self.cheeger,
            "average_normalized_ksi": self.average_normalized_ksi,
            "average_bound_satisfied": self.average_bound_satisfied,
            "all_satisfied": self.all_satisfied,
            "nodes": [
                {
                    "node": r.node,
                    "degree": r.degree,
                    "ksi": r.ksi,
                    "normalized_ksi": r.normalized_ksi,
                    "cheeger_bound_applicable": r.cheeger_bound_applicable,
                    "bounds_satisfied": r.bounds_satisfied,
                }
                for r in self.nodes
            ],
        }


def _at_least(value: float, bound: float) -> bool:
    return value >= bound - _REL_SLACK * abs(bound) - 1e-12


def verify_bounds(g: Graph, eig_limit: int = EIG_LIMIT, cheeger_limit: int = CHEEGER_LIMIT) -> BoundsReport:
    """Check every node against the spectral and Cheeger lower bounds."""
    n = g.n
    lam2 = algebraic_connectivity(g, limit=eig_limit)
    if not is_connected(g):
        lam2 = 0.0  # eigensolver noise around zero; the bound is trivial here
    h = cheeger_number(g, limit=cheeger_limit)
    ksi_vec = centrality_all(g, KSI)
    nksi_vec = centrality_all(g, NORMALIZED_KSI)
    lam_bound = lam2 / n
    records = []
    for i in range(n):
        d = int(ksi_vec.degrees[i])
        x = float(ksi_vec.values[i])
        xh = float(nksi_vec.values[i])
        applicable = d <= n / 2
        ok = _at_least(xh, lam_bound)
        if applicable:
            ok = ok and _at_least(x, h)
            ok = ok and _at_least(xh, h / (n - d) if n > d else 0.0)
        else:
            ok = ok and _at_least(xh, h / d)
        records.append(NodeBounds(i, d, x, xh, applicable, ok))
    avg = nksi_vec.average
    return BoundsReport(
        n=n,
        lambda2=lam2,
        cheeger=h,
        nodes=tuple(records),
        average_normalized_ksi=avg,
        average_bound_satisfied=_at_least(avg, lam_bound),
    )

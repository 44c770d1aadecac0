"""Immutable simple undirected graphs and edge-list ingestion.

The graph is stored in compressed sparse row form (``indptr``/``indices``)
with neighbor lists sorted per node. Node identifiers from input files are
mapped to dense integer ids in first-appearance order; the original labels
are kept for reporting.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .errors import DomainError, ParseError

DEFAULT_COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class IngestOptions:
    """Options controlling edge-list ingestion."""

    comment_prefixes: tuple[str, ...] = DEFAULT_COMMENT_PREFIXES
    drop_self_loops: bool = True
    take_lcc: bool = False

    def __post_init__(self):
        if not self.comment_prefixes:
            object.__setattr__(self, "comment_prefixes", DEFAULT_COMMENT_PREFIXES)


@dataclass(frozen=True)
class IngestStats:
    """Bookkeeping from one ingestion run."""

    lines_read: int = 0
    comment_lines: int = 0
    duplicate_edges: int = 0
    self_loops_dropped: int = 0


class Graph:
    """Simple undirected graph with dense ids and immutable storage.

    Invariants: no self-loops, no duplicate edges, symmetric adjacency,
    neighbor lists sorted ascending. Instances are safe to share across
    threads after construction.
    """

    __slots__ = ("_indptr", "_indices", "_labels")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, labels: tuple[str, ...]):
        indptr = np.asarray(indptr, dtype=np.int64)
        indices = np.asarray(indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._indptr = indptr
        self._indices = indices
        self._labels = tuple(labels)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Iterable[str] | None = None,
    ) -> "Graph":
        """Build a graph from (u, v) pairs, deduplicating as needed.

        Self-loops are rejected; duplicate pairs (in either orientation)
        collapse to a single edge.
        """
        if n < 1:
            raise DomainError("graph must have at least one node")
        pairs = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at node {u} not allowed")
            pairs.add((u, v) if u < v else (v, u))
        degrees = np.zeros(n, dtype=np.int64)
        for u, v in pairs:
            degrees[u] += 1
            degrees[v] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=indptr[1:])
        indices = np.zeros(int(indptr[-1]), dtype=np.int64)
        cursor = indptr[:-1].copy()
        for u, v in pairs:
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        for i in range(n):
            indices[indptr[i]:indptr[i + 1]].sort()
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise DomainError(f"expected {n} labels, got {len(labels)}")
        return cls(indptr, indices, labels)

    @property
    def n(self) -> int:
        return len(self._indptr) - 1

    @property
    def m_edges(self) -> int:
        return self._indices.size // 2

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self._indptr[i + 1] - self._indptr[i])

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids of node i (read-only view)."""
        self._check_node(i)
        return self._indices[self._indptr[i]:self._indptr[i + 1]]

    def adjacency_lists(self) -> list[np.ndarray]:
        return [self.neighbors(i) for i in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        pos = np.searchsorted(nbrs, v)
        return pos < nbrs.size and nbrs[pos] == v

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def dense_adjacency(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u in range(self.n):
            a[u, self.neighbors(u)] = 1
        return a

    def _check_node(self, i: int) -> None:
        if not (0 <= i < self.n):
            raise DomainError(f"node {i} out of range for graph with n={self.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._labels == other._labels
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
        )

    def __hash__(self):
        return hash((self._labels, self._indices.tobytes(), self._indptr.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m_edges={self.m_edges})"


def load_edge_list(
    source: str | Path | IO[str],
    opts: IngestOptions = IngestOptions(),
) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    Each non-comment line must carry at least two tokens; the first two
    are endpoint labels, extra tokens are ignored. Both LF and CRLF line
    endings are accepted.
    """
    graph, _ = load_edge_list_with_stats(source, opts)
    return graph


def load_edge_list_with_stats(
    source: str | Path | IO[str],
    opts: IngestOptions = IngestOptions(),
) -> tuple[Graph, IngestStats]:
    """Like :func:`load_edge_list` but also reports dropped-line counts."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_stream(fh, opts)
    return _parse_stream(source, opts)


def parse_edge_list(text: str, opts: IngestOptions = IngestOptions()) -> Graph:
    return load_edge_list(StringIO(text), opts)


def _parse_stream(fh: IO[str], opts: IngestOptions) -> tuple[Graph, IngestStats]:
    ids: dict[str, int] = {}
    labels: list[str] = []
    pairs: set[tuple[int, int]] = set()
    lines_read = comments = duplicates = loops = 0

    def node_id(label: str) -> int:
        got = ids.get(label)
        if got is None:
            got = len(labels)
            ids[label] = got
            labels.append(label)
        return got

    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        lines_read += 1
        if not line:
            continue
        if any(line.startswith(p) for p in opts.comment_prefixes):
            comments += 1
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"expected two endpoint tokens, got {line!r}", lineno)
        u = node_id(tokens[0])
        v = node_id(tokens[1])
        if u == v:
            if opts.drop_self_loops:
                loops += 1
                continue
            raise ParseError(f"self-loop at {tokens[0]!r}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in pairs:
            duplicates += 1
        else:
            pairs.add(key)

    if not labels:
        raise ParseError("empty graph: no nodes found in input")
    graph = Graph.from_edges(len(labels), pairs, labels)
    if opts.take_lcc:
        graph = largest_connected_component(graph)
    stats = IngestStats(lines_read, comments, duplicates, loops)
    return graph, stats


def boundary_edge_count(g: Graph, i: int) -> int:
    """Number of edges with exactly one endpoint among i's neighbors.

    The node i itself lies outside its neighborhood, so the d_i edges
    from the neighbors back to i are counted. Returns 0 for an isolated
    node.
    """
    g._check_node(i)
    nbrs = g.neighbors(i)
    if nbrs.size == 0:
        return 0
    mask = np.zeros(g.n, dtype=bool)
    mask[nbrs] = True
    degrees = g.degrees
    total = int(degrees[nbrs].sum())
    internal = 0
    for j in nbrs:
        internal += int(np.count_nonzero(mask[g.neighbors(int(j))]))
    return total - internal


def boundary_edge_counts(g: Graph, threads: int = 1) -> np.ndarray:
    """Boundary edge count for every node.

    For each node the crossing edges are the degree sum over its
    neighborhood minus the edges internal to the neighborhood. Chunks of
    nodes may be processed on worker threads; results are assembled in
    node order, so the output never depends on the thread count.
    """
    n = g.n
    if threads <= 1 or n < 256:
        return _boundary_range(g, 0, n)
    bounds = np.linspace(0, n, threads + 1, dtype=int)
    chunks = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda c: _boundary_range(g, c[0], c[1]), chunks))
    return np.concatenate(parts)


def _boundary_range(g: Graph, lo: int, hi: int) -> np.ndarray:
    indptr = g.indptr
    indices = g.indices
    degrees = g.degrees
    out = np.zeros(hi - lo, dtype=np.int64)
    mask = np.zeros(g.n, dtype=bool)
    for i in range(lo, hi):
        s, e = indptr[i], indptr[i + 1]
        if s == e:
            continue
        nbrs = indices[s:e]
        mask[nbrs] = True
        internal = 0
        for j in nbrs:
            internal += int(np.count_nonzero(mask[indices[indptr[j]:indptr[j + 1]]]))
        out[i - lo] = int(degrees[nbrs].sum()) - internal
        mask[nbrs] = False
    return out


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted id lists, in order of smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        members = [start]
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    members.append(v)
                    queue.append(v)
        members.sort()
        components.append(members)
    return components


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: Graph, nodes: list[int]) -> Graph:
    """Node-induced subgraph; ids are remapped densely in ascending order."""
    nodes = sorted(set(nodes))
    remap = {old: new for new, old in enumerate(nodes)}
    keep = np.zeros(g.n, dtype=bool)
    keep[nodes] = True
    edges = [
        (remap[u], remap[v])
        for u, v in g.edges()
        if keep[u] and keep[v]
    ]
    labels = tuple(g.labels[old] for old in nodes)
    return Graph.from_edges(len(nodes), edges, labels)


def largest_connected_component(g: Graph) -> Graph:
    """Subgraph on the largest component; ties go to the smallest min id."""
    components = connected_components(g)
    best = max(components, key=lambda c: (len(c), -c[0]))
    if len(best) == g.n:
        return g
    return induced_subgraph(g, best)

"""Seeded random-graph models and deterministic fixtures.

All models draw from a PCG64 stream, so a (model, params, seed) triple
always reproduces the same edge set on any platform. The stream name is
exported as :data:`RNG_ALGORITHM` for run manifests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DomainError
from .graph import Graph

RNG_ALGORITHM = "pcg64"

MODELS = ("er", "ws", "ba", "bhl", "star", "complete", "path", "cycle")
FIXTURE_MODELS = ("star", "complete", "path", "cycle")

SeedLike = "int | np.random.SeedSequence"


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an integer seed or a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def derive_seed(seed: int, *key: int) -> np.random.SeedSequence:
    """Deterministic child seed for ensemble tasks, independent of scheduling."""
    return np.random.SeedSequence((int(seed),) + tuple(int(k) for k in key))


@dataclass(frozen=True)
class GeneratorSpec:
    """Serializable description of one graph-generation request."""

    model: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {MODELS}")
        _validate_params(self.model, self.params)

    def build(self) -> Graph:
        return build(self)

    def to_dict(self) -> dict[str, Any]:
        return {"model": self.model, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GeneratorSpec":
        return cls(data["model"], dict(data.get("params", {})), int(data.get("seed", 0)))


_REQUIRED_PARAMS = {
    "er": ("n", "p"),
    "ws": ("n", "k", "p"),
    "ba": ("n", "m"),
    "bhl": ("n0", "m", "n"),
    "star": ("n",),
    "complete": ("n",),
    "path": ("n",),
    "cycle": ("n",),
}


def _validate_params(model: str, params: dict[str, Any]) -> None:
    required = _REQUIRED_PARAMS[model]
    missing = [k for k in required if k not in params]
    if missing:
        raise DomainError(f"model {model!r} missing parameters {missing}")
    extra = [k for k in params if k not in required]
    if extra:
        raise DomainError(f"model {model!r} got unexpected parameters {extra}")
    n = int(params["n"])
    if n < 1:
        raise DomainError("n must be >= 1")
    if model == "er":
        p = float(params["p"])
        if not 0.0 <= p <= 1.0:
            raise DomainError("p must lie in [0, 1]")
    elif model == "ws":
        k = int(params["k"])
        p = float(params["p"])
        if k % 2 != 0 or not 0 < k < n:
            raise DomainError(f"ws requires even k with 0 < k < n, got k={k}, n={n}")
        if not 0.0 <= p <= 1.0:
            raise DomainError("p must lie in [0, 1]")
    elif model == "ba":
        m = int(params["m"])
        if not 1 <= m < n:
            raise DomainError(f"ba requires 1 <= m < n, got m={m}, n={n}")
    elif model == "bhl":
        n0 = int(params["n0"])
        m = int(params["m"])
        if not m <= n0 < n:
            raise DomainError(f"bhl requires m <= n0 < n, got m={m}, n0={n0}, n={n}")


def build(spec: GeneratorSpec) -> Graph:
    p = spec.params
    if spec.model == "er":
        return erdos_renyi(int(p["n"]), float(p["p"]), spec.seed)
    if spec.model == "ws":
        return watts_strogatz(int(p["n"]), int(p["k"]), float(p["p"]), spec.seed)
    if spec.model == "ba":
        return barabasi_albert(int(p["n"]), int(p["m"]), spec.seed)
    if spec.model == "bhl":
        return bhl(int(p["n0"]), int(p["m"]), int(p["n"]), spec.seed)
    return fixture(spec.model, int(p["n"]))


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """G(n, p): every unordered pair is an edge independently with probability p."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    rng = make_rng(seed)
    edges: list[tuple[int, int]] = []
    for i in range(n - 1):
        draws = rng.random(n - 1 - i)
        hits = np.nonzero(draws < p)[0]
        edges.extend((i, int(i + 1 + j)) for j in hits)
    return Graph.from_edges(n, edges)


def watts_strogatz(n: int, k: int, p: float, seed) -> Graph:
    """Ring lattice of degree k with single-pass random rewiring.

    Each node starts connected to its k/2 nearest neighbors on each side.
    Every lattice edge (u, u+r) is then rewired with probability p to a
    uniformly chosen target that is neither u nor already adjacent to u,
    so the edge count stays exactly n*k/2.
    """
    if k % 2 != 0 or not 0 < k < n:
        raise DomainError(f"watts_strogatz requires even k with 0 < k < n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    rng = make_rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    half = k // 2
    for r in range(1, half + 1):
        for u in range(n):
            v = (u + r) % n
            adj[u].add(v)
            adj[v].add(u)
    for r in range(1, half + 1):
        for u in range(n):
            v = (u + r) % n
            if rng.random() >= p:
                continue
            if len(adj[u]) >= n - 1:
                continue  # saturated node, nothing to rewire to
            w = int(rng.integers(n))
            while w == u or w in adj[u]:
                w = int(rng.integers(n))
            adj[u].remove(v)
            adj[v].remove(u)
            adj[u].add(w)
            adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def barabasi_albert(n: int, m: int, seed) -> Graph:
    """Preferential attachment starting from a star on m+1 nodes.

    Node 0 is the initial hub. Every later node attaches m edges to
    distinct existing nodes, each chosen with probability proportional
    to its current degree (repeated draws from a degree-weighted urn,
    rejecting duplicates).
    """
    if not 1 <= m < n:
        raise DomainError(f"barabasi_albert requires 1 <= m < n, got m={m}, n={n}")
    rng = make_rng(seed)
    edges: list[tuple[int, int]] = [(0, leaf) for leaf in range(1, m + 1)]
    # urn holds one entry per edge endpoint
    urn: list[int] = [0] * m + list(range(1, m + 1))
    for source in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            t = urn[int(rng.integers(len(urn)))]
            targets.add(t)
        for t in targets:
            edges.append((source, t))
        urn.extend(targets)
        urn.extend([source] * m)
    return Graph.from_edges(n, edges)


def bhl(n0: int, m: int, n: int, seed) -> Graph:
    """Growing small-world scale-free network from local attachment.

    Construction: the initial core is a complete graph on n0 nodes. Each
    new node picks a uniformly random existing node as its anchor, links
    to it, and links to m-1 distinct uniformly chosen neighbors of the
    anchor. Attaching through neighborhoods makes high-degree nodes more
    likely targets (degree-proportional in effect) while closing
    triangles around the anchor, which is what yields both the heavy
    degree tail and the high clustering. Requiring m <= n0 guarantees
    every anchor has enough neighbors.
    """
    if not m <= n0 < n:
        raise DomainError(f"bhl requires m <= n0 < n, got m={m}, n0={n0}, n={n}")
    if m < 1:
        raise DomainError("m must be >= 1")
    rng = make_rng(seed)
    adj: list[set[int]] = [set(range(n0)) - {i} for i in range(n0)]
    for source in range(n0, n):
        anchor = int(rng.integers(source))
        targets = {anchor}
        neighborhood = sorted(adj[anchor])
        picks = rng.permutation(len(neighborhood))[: m - 1]
        targets.update(neighborhood[i] for i in picks)
        adj.append(set(targets))
        for t in targets:
            adj[t].add(source)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def fixture(model: str, n: int) -> Graph:
    """Deterministic named graphs.

    star(n) is a hub plus n leaves (n+1 nodes); complete/path/cycle are
    the usual graphs on n nodes.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if model == "star":
        return Graph.from_edges(n + 1, [(0, leaf) for leaf in range(1, n + 1)])
    if model == "complete":
        return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if model == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if model == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [(0, 1)] if n == 2 else []
        return Graph.from_edges(n, edges)
    raise DomainError(f"unknown fixture model {model!r}; expected one of {FIXTURE_MODELS}")

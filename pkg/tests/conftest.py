import numpy as np
import pytest

from ksigraph.graph import Graph


def boundary_brute(g: Graph, i: int) -> int:
    """Independent oracle: walk every edge and test one-endpoint membership."""
    nbrs = set(int(v) for v in g.neighbors(i))
    crossing = 0
    for u, v in g.edges():
        if (u in nbrs) != (v in nbrs):
            crossing += 1
    return crossing


def triple_sum_boundary(g: Graph, i: int) -> int:
    """Dense oracle: sum over j, k of a_ij * a_jk * (1 - a_ki)."""
    a = g.dense_adjacency(dtype=np.int64)
    abar = 1 - a  # complement including the diagonal ones
    return int(a[i, :] @ a @ abar[:, i])


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)

import numpy as np
import pytest

from ksigraph.errors import DomainError
from ksigraph.fitting import skewness
from ksigraph.generators import (
    GeneratorSpec,
    barabasi_albert,
    bhl,
    build,
    erdos_renyi,
    fixture,
    watts_strogatz,
)


def edge_set(g):
    return set(g.edges())


class TestErdosRenyi:
    def test_p_zero_isolated(self):
        g = erdos_renyi(5, 0.0, seed=1)
        assert g.n == 5
        assert g.m_edges == 0

    def test_p_one_complete(self):
        g = erdos_renyi(5, 1.0, seed=1)
        assert g.m_edges == 10

    def test_mean_edge_count_binomial(self):
        # 100 seeds at n=1000, p=0.01: mean within 3 sigma of C(n,2) p
        n, p, reps = 1000, 0.01, 100
        pairs = n * (n - 1) // 2
        counts = [erdos_renyi(n, p, seed=s).m_edges for s in range(reps)]
        expected = pairs * p
        sigma = np.sqrt(pairs * p * (1 - p))
        assert abs(np.mean(counts) - expected) <= 3 * sigma / np.sqrt(reps)

    def test_deterministic(self):
        a = erdos_renyi(50, 0.2, seed=7)
        b = erdos_renyi(50, 0.2, seed=7)
        assert a == b
        assert erdos_renyi(50, 0.2, seed=8) != a

    def test_invalid_p(self):
        with pytest.raises(DomainError):
            erdos_renyi(5, 1.2, seed=0)


class TestWattsStrogatz:
    def test_no_rewiring_is_ring(self):
        g = watts_strogatz(6, 2, 0.0, seed=1)
        assert edge_set(g) == {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)}

    def test_lattice_degree(self):
        g = watts_strogatz(6, 4, 0.0, seed=1)
        assert all(g.degree(i) == 4 for i in range(6))

    def test_edge_count_preserved_by_rewiring(self):
        g = watts_strogatz(2000, 20, 0.3, seed=3)
        assert g.m_edges == 2000 * 20 // 2

    def test_invalid_k(self):
        with pytest.raises(DomainError):
            watts_strogatz(10, 3, 0.1, seed=0)
        with pytest.raises(DomainError):
            watts_strogatz(10, 10, 0.1, seed=0)

    def test_deterministic(self):
        assert watts_strogatz(40, 4, 0.5, seed=9) == watts_strogatz(40, 4, 0.5, seed=9)


class TestBarabasiAlbert:
    def test_initial_star_only(self):
        g = barabasi_albert(6, 5, seed=2)
        assert edge_set(g) == {(0, leaf) for leaf in range(1, 6)}

    def test_edge_count_formula(self):
        # star contributes m edges, every later node adds m more
        g = barabasi_albert(100, 3, seed=4)
        assert g.m_edges == 3 + (100 - 4) * 3

    def test_connected(self):
        from ksigraph.graph import is_connected

        assert is_connected(barabasi_albert(200, 2, seed=5))

    def test_degree_distribution_heavy_tail(self):
        gammas = [
            skewness(barabasi_albert(2000, 5, seed=s).degrees) for s in range(10)
        ]
        assert all(v > 1 for v in gammas)

    def test_invalid_m(self):
        with pytest.raises(DomainError):
            barabasi_albert(5, 5, seed=0)
        with pytest.raises(DomainError):
            barabasi_albert(5, 0, seed=0)

    def test_new_node_attaches_m_distinct_targets(self):
        g = barabasi_albert(30, 4, seed=6)
        # nodes after the initial star each have degree >= m
        assert all(g.degree(i) >= 4 for i in range(5, 30))


class TestBhl:
    def test_no_growth_gives_core_only(self):
        g = bhl(5, 2, 5, seed=1)
        assert g.n == 5
        assert g.m_edges == 10  # complete core

    def test_node_count_contract(self):
        g = bhl(100, 20, 4000, seed=1)
        assert g.n == 4000

    def test_edge_count(self):
        g = bhl(10, 3, 50, seed=2)
        assert g.m_edges == 45 + 40 * 3

    def test_invalid_parameter_order(self):
        with pytest.raises(DomainError):
            bhl(5, 6, 10, seed=0)  # m > n0
        with pytest.raises(DomainError):
            bhl(10, 2, 10, seed=0)  # n0 not < n

    def test_deterministic(self):
        assert bhl(10, 3, 60, seed=4) == bhl(10, 3, 60, seed=4)


class TestFixtures:
    def test_star(self):
        g = fixture("star", 5)
        assert (g.n, g.m_edges) == (6, 5)

    def test_cycle(self):
        g = fixture("cycle", 4)
        assert edge_set(g) == {(0, 1), (1, 2), (2, 3), (0, 3)}

    def test_complete(self):
        assert fixture("complete", 4).m_edges == 6

    def test_path(self):
        g = fixture("path", 3)
        assert edge_set(g) == {(0, 1), (1, 2)}

    def test_unknown_model(self):
        with pytest.raises(DomainError):
            fixture("torus", 4)


class TestGeneratorSpec:
    def test_roundtrip(self):
        spec = GeneratorSpec("ws", {"n": 10, "k": 4, "p": 0.25}, seed=3)
        again = GeneratorSpec.from_dict(spec.to_dict())
        assert again == spec
        assert build(again) == build(spec)

    def test_rejects_missing_params(self):
        with pytest.raises(DomainError, match="missing"):
            GeneratorSpec("er", {"n": 10})

    def test_rejects_extra_params(self):
        with pytest.raises(DomainError, match="unexpected"):
            GeneratorSpec("ba", {"n": 10, "m": 2, "p": 0.1})

    def test_all_outputs_simple_and_symmetric(self):
        specs = [
            GeneratorSpec("er", {"n": 30, "p": 0.2}, seed=1),
            GeneratorSpec("ws", {"n": 30, "k": 4, "p": 0.4}, seed=1),
            GeneratorSpec("ba", {"n": 30, "m": 3}, seed=1),
            GeneratorSpec("bhl", {"n0": 5, "m": 3, "n": 30}, seed=1),
        ]
        for spec in specs:
            g = build(spec)
            seen = set()
            for u in range(g.n):
                assert u not in set(int(v) for v in g.neighbors(u))
                for v in g.neighbors(u):
                    assert u in g.neighbors(int(v))
                    seen.add((min(u, int(v)), max(u, int(v))))
            assert len(seen) == g.m_edges

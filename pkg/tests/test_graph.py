from io import StringIO

import numpy as np
import pytest

from ksigraph.errors import DomainError, ParseError
from ksigraph.generators import erdos_renyi, fixture
from ksigraph.graph import (
    Graph,
    IngestOptions,
    boundary_edge_count,
    boundary_edge_counts,
    connected_components,
    largest_connected_component,
    load_edge_list,
    load_edge_list_with_stats,
    parse_edge_list,
)

from conftest import boundary_brute, triple_sum_boundary


class TestLoadEdgeList:
    def test_duplicate_edges_collapse(self):
        g = parse_edge_list("a b\nb c\na b\n")
        assert g.n == 3
        assert g.m_edges == 2

    def test_duplicate_reverse_orientation_collapse(self):
        g = parse_edge_list("a b\nb a\n")
        assert g.m_edges == 1

    def test_comments_and_self_loops(self):
        g, stats = load_edge_list_with_stats(StringIO("# hdr\n1 2\n2 2\n"))
        assert g.n == 2
        assert g.m_edges == 1
        assert stats.comment_lines == 1
        assert stats.self_loops_dropped == 1

    def test_percent_comments(self):
        g = parse_edge_list("% header\n0 1\n")
        assert g.m_edges == 1

    def test_self_loop_error_when_not_dropping(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_edge_list("2 2\n", IngestOptions(drop_self_loops=False))

    def test_malformed_line_reports_number(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_edge_list("a b\nb c\nonly_one_token\n")

    def test_empty_input_rejected(self):
        with pytest.raises(ParseError, match="empty"):
            parse_edge_list("# nothing here\n")

    def test_crlf_accepted(self):
        g = parse_edge_list("a b\r\nb c\r\n")
        assert g.m_edges == 2

    def test_extra_tokens_ignored(self):
        g = parse_edge_list("a b 3.5 junk\nb c 1\n")
        assert g.n == 3
        assert g.m_edges == 2

    def test_first_appearance_label_order(self):
        g = parse_edge_list("x y\nz x\n")
        assert g.labels == ("x", "y", "z")

    def test_take_lcc(self):
        g = parse_edge_list("a b\nc d\nd e\n", IngestOptions(take_lcc=True))
        assert g.n == 3
        assert g.labels == ("c", "d", "e")
        assert g.m_edges == 2

    def test_loading_twice_is_identical(self):
        text = "a b\nb c\nc a\nd e\n"
        assert parse_edge_list(text) == parse_edge_list(text)


class TestGraphInvariants:
    def test_symmetry_and_sorted_neighbors(self):
        g = parse_edge_list("c a\nb c\na b\nd a\n")
        for u in range(g.n):
            nbrs = g.neighbors(u)
            assert list(nbrs) == sorted(nbrs)
            for v in nbrs:
                assert u in g.neighbors(int(v))

    def test_degree_sum_is_twice_edges(self):
        g = erdos_renyi(40, 0.2, seed=5)
        assert int(g.degrees.sum()) == 2 * g.m_edges

    def test_self_loop_rejected_in_constructor(self):
        with pytest.raises(DomainError, match="self-loop"):
            Graph.from_edges(3, [(0, 0)])

    def test_immutable_adjacency(self):
        g = parse_edge_list("a b\n")
        with pytest.raises(ValueError):
            g.indices[0] = 5


class TestBoundaryEdgeCount:
    def test_star_center_and_leaf(self):
        g = fixture("star", 5)
        assert boundary_edge_count(g, 0) == 5
        assert boundary_edge_count(g, 1) == 5

    def test_cycle4(self):
        g = fixture("cycle", 4)
        assert all(boundary_edge_count(g, i) == 4 for i in range(4))

    def test_complete4(self):
        g = fixture("complete", 4)
        assert all(boundary_edge_count(g, i) == 3 for i in range(4))

    def test_isolated_node_is_zero(self):
        g = Graph.from_edges(3, [(0, 1)])
        assert boundary_edge_count(g, 2) == 0

    def test_out_of_range_node(self):
        g = fixture("path", 3)
        with pytest.raises(DomainError):
            boundary_edge_count(g, 3)

    def test_matches_edge_walk_oracle_on_random_graphs(self):
        for seed in range(20):
            g = erdos_renyi(25, 0.2, seed=seed)
            counts = boundary_edge_counts(g)
            for i in range(g.n):
                assert counts[i] == boundary_brute(g, i)

    def test_matches_triple_sum_on_random_graphs(self):
        # adjacency-product identity, exercised across sizes up to 64
        for seed, (n, p) in enumerate([(8, 0.3), (16, 0.25), (32, 0.15), (64, 0.08), (64, 0.3)]):
            g = erdos_renyi(n, p, seed=seed)
            counts = boundary_edge_counts(g)
            for i in range(g.n):
                assert counts[i] == triple_sum_boundary(g, i)

    def test_bounds(self):
        for seed in range(5):
            g = erdos_renyi(30, 0.2, seed=seed)
            counts = boundary_edge_counts(g)
            d = g.degrees
            assert np.all(counts >= 0)
            assert np.all(counts <= d * (g.n - d))
            assert np.all(counts[d >= 1] >= d[d >= 1])

    def test_threads_do_not_change_values(self):
        g = erdos_renyi(300, 0.05, seed=11)
        base = boundary_edge_counts(g, threads=1)
        assert np.array_equal(base, boundary_edge_counts(g, threads=4))
        assert np.array_equal(base, boundary_edge_counts(g, threads=8))

    def test_closed_neighborhood_gives_degree(self):
        # neighborhood with no edges leaving it: crossing edges are exactly
        # the d_i edges back to the node itself
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2)])  # triangle + 2 isolated
        assert boundary_edge_count(g, 0) == 2


class TestComponents:
    def test_connected_graph_unchanged(self):
        g = parse_edge_list("a b\nb c\n")
        assert largest_connected_component(g) is g

    def test_two_components(self):
        g = parse_edge_list("a b\nc d\nd e\n")
        lcc = largest_connected_component(g)
        assert lcc.n == 3
        assert lcc.labels == ("c", "d", "e")
        assert lcc.m_edges == 2

    def test_tie_breaks_to_smallest_min_id(self):
        g = parse_edge_list("a b\nc d\n")
        lcc = largest_connected_component(g)
        assert lcc.labels == ("a", "b")

    def test_all_isolated(self):
        g = Graph.from_edges(3, [])
        lcc = largest_connected_component(g)
        assert lcc.n == 1
        assert lcc.m_edges == 0

    def test_component_enumeration(self):
        g = parse_edge_list("a b\nc d\nd e\nf f2\n")
        comps = connected_components(g)
        assert sorted(len(c) for c in comps) == [2, 2, 3]

import numpy as np
import pytest

from hyperpred import (
    Hyperedge,
    adjacency_clique,
    adjacency_ndp,
    build,
    restrict_to_largest_component,
)
from hyperpred.rng import derive_rng

import oracles


class TestBuild:
    def test_single_edge_counts(self, triangle):
        assert triangle.n == 3
        assert triangle.m == 1
        assert triangle.node_degree[triangle.id_of("a")] == 1.0
        assert triangle.edge_degree[0] == 3

    def test_path_degrees(self, path_graph):
        g = path_graph
        assert g.node_degree[g.id_of("b")] == 2.0
        assert g.node_degree[g.id_of("a")] == 1.0
        assert g.node_degree[g.id_of("c")] == 1.0

    def test_labels_are_densely_indexed_in_first_seen_order(self):
        g = build([("x", "q"), ("q", "a", "x")])
        assert g.labels == ("x", "q", "a")
        assert [g.id_of(lab) for lab in g.labels] == [0, 1, 2]

    def test_default_weight_is_one(self, triangle):
        assert triangle.edges[0].weight == 1.0

    def test_duplicate_labels_within_edge_collapse(self):
        g = build([("a", "a", "b")])
        assert g.m == 1
        assert len(g.edges[0]) == 2

    def test_duplicate_hyperedges_kept_as_distinct_occurrences(self):
        g = build([("a", "b"), ("a", "b")])
        assert g.m == 2
        a, b = g.id_of("a"), g.id_of("b")
        assert adjacency_clique(g)[(a, b)] == 2.0

    def test_singleton_edges_dropped_with_warning(self):
        with pytest.warns(UserWarning, match="fewer than 2"):
            g = build([("a",), ("b", "c")])
        assert g.m == 1
        assert "a" not in g.labels

    def test_empty_edge_list_rejected(self):
        with pytest.raises(ValueError):
            build([])

    def test_all_singletons_rejected(self):
        with pytest.raises(ValueError):
            with pytest.warns(UserWarning):
                build([("a",), ("b",)])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            build([("a", "b")], weights=[0.0])
        with pytest.raises(ValueError):
            build([("a", "b")], weights=[-1.0])

    def test_misaligned_weights_rejected(self):
        with pytest.raises(ValueError):
            build([("a", "b")], weights=[1.0, 2.0])

    def test_timestamps_preserved(self):
        g = build([("a", "b"), ("b", "c")], timestamps=[2001, None])
        assert g.edges[0].t == 2001
        assert g.edges[1].t is None

    def test_degree_arrays_are_read_only(self, triangle):
        with pytest.raises(ValueError):
            triangle.node_degree[0] = 5.0


class TestHyperedge:
    def test_equality_ignores_weight_and_timestamp(self):
        assert Hyperedge((1, 2, 3), weight=2.0, t=5) == Hyperedge((3, 2, 1))
        assert hash(Hyperedge((1, 2), weight=2.0)) == hash(Hyperedge((2, 1)))

    def test_nodes_sorted_and_deduplicated(self):
        assert Hyperedge((3, 1, 3, 2)).nodes == (1, 2, 3)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Hyperedge(())

    def test_bad_weight_rejected(self):
        with pytest.raises(ValueError):
            Hyperedge((1, 2), weight=0.0)


class TestNeighbors:
    def test_within_single_edge(self, triangle):
        a = triangle.id_of("a")
        assert triangle.neighbors(a) == {triangle.id_of("b"), triangle.id_of("c")}

    def test_path_endpoints_and_middle(self, path_graph):
        g = path_graph
        assert g.neighbors(g.id_of("a")) == {g.id_of("b")}
        assert g.neighbors(g.id_of("b")) == {g.id_of("a"), g.id_of("c")}

    def test_invalid_node_rejected(self, triangle):
        with pytest.raises(ValueError):
            triangle.neighbors(7)

    def test_matches_clique_adjacency_support(self):
        rng = derive_rng(101, "neighbor-support")
        for _ in range(30):
            edges, weights = oracles.random_edge_sets(rng)
            g = build(edges, weights)
            adj = adjacency_clique(g)
            for lab in oracles.all_labels(edges):
                v = g.id_of(lab)
                via_adjacency = {x if y == v else y
                                 for (x, y) in adj if v in (x, y)}
                assert g.neighbors(v) == via_adjacency


class TestCliqueAdjacency:
    def test_triangle_pairs(self, triangle):
        adj = adjacency_clique(triangle)
        assert set(adj.values()) == {1.0}
        assert len(adj) == 3
        assert all(x != y for x, y in adj)

    def test_overlapping_edges_sum(self):
        g = build([("a", "b"), ("a", "b", "c")])
        assert adjacency_clique(g)[(g.id_of("a"), g.id_of("b"))] == 2.0

    def test_matches_brute_force_on_random_instances(self):
        rng = derive_rng(102, "clique-oracle")
        for _ in range(30):
            edges, weights = oracles.random_edge_sets(rng, weighted=True)
            g = build(edges, weights)
            adj = adjacency_clique(g)
            labels = oracles.all_labels(edges)
            for i, x in enumerate(labels):
                for y in labels[i + 1:]:
                    expected = sum(w for e, w in zip(edges, weights) if x in e and y in e)
                    key = tuple(sorted((g.id_of(x), g.id_of(y))))
                    assert adj.get(key, 0.0) == pytest.approx(expected, abs=1e-12)


class TestNdpAdjacency:
    def test_triangle_halves_the_weight(self, triangle):
        adj = adjacency_ndp(triangle)
        assert adj[(0, 1)] == 0.5

    def test_overlapping_edges(self):
        g = build([("a", "b"), ("a", "b", "c")])
        assert adjacency_ndp(g)[(g.id_of("a"), g.id_of("b"))] == 1.5

    def test_row_sums_preserve_node_degree(self):
        rng = derive_rng(103, "ndp-rows")
        for _ in range(50):
            edges, weights = oracles.random_edge_sets(rng, weighted=True)
            g = build(edges, weights)
            adj = adjacency_ndp(g)
            row_sums = np.zeros(g.n)
            for (x, y), v in adj.items():
                row_sums[x] += v
                row_sums[y] += v
            assert np.allclose(row_sums, g.node_degree, atol=1e-12, rtol=0)


class TestStructure:
    def test_incidence_views_are_transposes(self):
        rng = derive_rng(104, "incidence")
        for _ in range(20):
            edges, weights = oracles.random_edge_sets(rng)
            g = build(edges, weights)
            for v in range(g.n):
                for eid in g.incident_edges(v):
                    assert v in g.edges[eid].nodes
            for eid, e in enumerate(g.edges):
                for v in e.nodes:
                    assert eid in g.incident_edges(v)

    def test_restricted_to_edges_keeps_node_universe(self, path_graph):
        sub = path_graph.restricted_to_edges([0])
        assert sub.n == path_graph.n
        assert sub.m == 1
        assert sub.node_degree[sub.id_of("c")] == 0.0


class TestLargestComponent:
    def test_keeps_larger_component(self):
        g = build([("a", "b"), ("c", "d"), ("d", "e")])
        cut = restrict_to_largest_component(g)
        assert set(cut.labels) == {"c", "d", "e"}
        assert cut.m == 2

    def test_preserves_weights_and_timestamps(self):
        g = build([("a", "b"), ("c", "d", "e")], weights=[1.0, 2.5], timestamps=[None, 7])
        cut = restrict_to_largest_component(g)
        assert cut.m == 1
        assert cut.edges[0].weight == 2.5
        assert cut.edges[0].t == 7

    def test_connected_graph_unchanged(self, path_graph):
        cut = restrict_to_largest_component(path_graph)
        assert cut.n == path_graph.n
        assert cut.m == path_graph.m

"""Graph construction, sampling, halving, densities, and the file format."""

import io
import itertools

import numpy as np
import pytest
from scipy import stats

import ramsey_lab.graphs as graphs_mod
from ramsey_lab.graphs import (
    Graph,
    build_graph,
    common_neighborhood,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_probability,
    pair_density,
    path_graph,
    random_halving,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)
from ramsey_lab.rng import RngStream


class TestBuildGraph:
    def test_single_edge(self):
        g = build_graph(3, [(0, 1)])
        assert g.edge_count == 1
        assert g.has_edge(0, 1) and g.has_edge(1, 0)
        assert not g.has_edge(0, 2)

    def test_empty(self):
        g = build_graph(2, [])
        assert g.edge_count == 0
        assert g.vertex_count == 2

    def test_complete_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert g.edge_count == 3

    def test_duplicates_and_orientation_collapse(self):
        g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.edge_count == 1

    def test_out_of_range_vertex(self):
        with pytest.raises(ValueError):
            build_graph(3, [(0, 3)])
        with pytest.raises(ValueError):
            build_graph(3, [(-1, 1)])

    def test_loop_edge(self):
        with pytest.raises(ValueError):
            build_graph(3, [(1, 1)])


class TestGraphBasics:
    def test_degrees_and_neighbors(self):
        g = cycle_graph(4)
        assert g.degrees() == [2, 2, 2, 2]
        assert g.neighbors(0) == (1, 3)
        assert g.degree(1) == 2

    def test_edges_lexicographic(self):
        g = build_graph(4, [(2, 3), (0, 2), (0, 1)])
        assert g.edges() == [(0, 1), (0, 2), (2, 3)]
        eu, ev = g.edge_arrays()
        assert list(eu) == [0, 0, 2] and list(ev) == [1, 2, 3]

    def test_equality_and_hash(self):
        a = build_graph(3, [(0, 1)])
        b = build_graph(3, [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != build_graph(3, [(0, 2)])
        assert a != build_graph(4, [(0, 1)])

    def test_with_edge(self):
        g = empty_graph(3).with_edge(0, 2)
        assert g.edge_count == 1
        assert g.with_edge(0, 2).edge_count == 1  # already present
        with pytest.raises(ValueError):
            g.with_edge(1, 1)

    def test_edge_count_bounds(self):
        n = 7
        g = complete_graph(n)
        assert g.edge_count == n * (n - 1) // 2

    def test_vertex_checks(self):
        g = empty_graph(2)
        with pytest.raises(ValueError):
            g.degree(2)
        with pytest.raises(ValueError):
            g.has_edge(0, 5)


class TestFactories:
    def test_path_and_cycle(self):
        assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
        assert cycle_graph(4).edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]
        with pytest.raises(ValueError):
            cycle_graph(2)

    def test_complete_bipartite(self):
        g = complete_bipartite_graph(2, 3)
        assert g.vertex_count == 5
        assert g.edge_count == 6
        assert not g.has_edge(0, 1)  # same side
        assert g.has_edge(0, 4)

    def test_book(self):
        g = graphs_mod.book_graph(2, 3)
        # spine edge + each page tied to both spine vertices
        assert g.edge_count == 1 + 2 * 3
        assert g.has_edge(0, 1)
        assert g.has_edge(0, 2) and g.has_edge(1, 2)
        assert not g.has_edge(2, 3)


class TestSampleGnp:
    def test_certain_edges(self):
        g = sample_gnp(5, 1.0, RngStream(0))
        assert g == complete_graph(5)

    def test_impossible_edges(self):
        g = sample_gnp(5, 0.0, RngStream(0))
        assert g.edge_count == 0

    def test_determinism(self):
        a = sample_gnp(40, 0.37, RngStream(99))
        b = sample_gnp(40, 0.37, RngStream(99))
        assert a == b
        assert a != sample_gnp(40, 0.37, RngStream(98))

    def test_p_validation(self):
        with pytest.raises(ValueError):
            sample_gnp(5, 1.2, RngStream(0))
        with pytest.raises(ValueError):
            sample_gnp(5, -0.1, RngStream(0))

    def test_mean_edge_count_matches_binomial(self):
        # 10^4 seeded samples of G(100, 0.5): mean within 3 standard errors
        root = RngStream(2024)
        total = sum(
            sample_gnp(100, 0.5, root.child(i)).edge_count for i in range(10_000)
        )
        mean = total / 10_000
        assert abs(mean - 2475.0) <= 1.1

    def test_blocked_path_matches_dense_path(self, monkeypatch):
        # force the block-assembled builder and compare against the dense one
        dense = sample_gnp(60, 0.4, RngStream(5))
        monkeypatch.setattr(graphs_mod, "_DENSE_BUILD_LIMIT", 16)
        monkeypatch.setattr(graphs_mod, "_BLOCK_ROWS", 32)
        blocked = sample_gnp(60, 0.4, RngStream(5))
        assert blocked == dense


class TestRandomHalving:
    def test_empty_graph(self):
        split = random_halving(empty_graph(4), RngStream(0))
        assert split.red.edge_count == 0 and split.blue.edge_count == 0

    def test_partition_invariants(self):
        F = sample_gnp(30, 0.5, RngStream(3))
        split = random_halving(F, RngStream(4))
        assert split.red.edge_count + split.blue.edge_count == F.edge_count
        red_edges = set(split.red.edges())
        blue_edges = set(split.blue.edges())
        assert red_edges.isdisjoint(blue_edges)
        assert red_edges | blue_edges == set(F.edges())
        assert split.red.vertex_count == split.blue.vertex_count == F.vertex_count

    def test_single_edge_coin_is_fair(self):
        F = complete_graph(2)
        root = RngStream(12)
        reds = sum(
            random_halving(F, root.child(i)).red.edge_count for i in range(10_000)
        )
        assert abs(reds / 10_000 - 0.5) < 0.02

    def test_red_blue_symmetry_two_sample(self):
        # edge-count laws of the two classes agree (fixed seed)
        root = RngStream(77)
        reds, blues = [], []
        for i in range(4000):
            t = root.child(i)
            F = sample_gnp(12, 0.5, t.child(0))
            s = random_halving(F, t.child(1))
            reds.append(s.red.edge_count)
            blues.append(s.blue.edge_count)
        assert stats.ks_2samp(reds, blues).pvalue > 0.01

    def test_determinism(self):
        F = sample_gnp(20, 0.6, RngStream(1))
        a = random_halving(F, RngStream(2))
        b = random_halving(F, RngStream(2))
        assert a.red == b.red and a.blue == b.blue


class TestGraphProbability:
    def test_single_absent_edge(self):
        assert graph_probability(empty_graph(2), 0.3) == pytest.approx(0.7)

    def test_triangle(self):
        assert graph_probability(complete_graph(3), 0.5) == pytest.approx(0.125)

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
    def test_total_probability(self, p):
        pairs = list(itertools.combinations(range(3), 2))
        total = 0.0
        for mask in range(8):
            edges = [pairs[i] for i in range(3) if mask >> i & 1]
            total += graph_probability(build_graph(3, edges), p)
        assert abs(total - 1.0) < 1e-12


class TestCommonNeighborhood:
    def test_complete(self):
        assert common_neighborhood(complete_graph(4), [0, 1]) == (2, 3)

    def test_triangle_free_cycle(self):
        c5 = cycle_graph(5)
        for u, v in c5.edges():
            assert common_neighborhood(c5, [u, v]) == ()

    def test_four_cycle(self):
        assert common_neighborhood(cycle_graph(4), [0, 2]) == (1, 3)

    def test_empty_set_gives_all(self):
        assert common_neighborhood(empty_graph(3), []) == (0, 1, 2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            common_neighborhood(empty_graph(3), [5])


class TestPairDensity:
    def test_complete(self):
        assert pair_density(complete_graph(6), [0, 1], [2, 3, 4]) == 1.0

    def test_empty(self):
        assert pair_density(empty_graph(6), [0], [1, 2]) == 0.0

    def test_four_cycle(self):
        assert pair_density(cycle_graph(4), [0], [1, 2, 3]) == pytest.approx(2 / 3)

    def test_validation(self):
        g = complete_graph(4)
        with pytest.raises(ValueError):
            pair_density(g, [], [1])
        with pytest.raises(ValueError):
            pair_density(g, [0, 1], [1, 2])
        with pytest.raises(ValueError):
            pair_density(g, [0], [9])


class TestEdgeListFormat:
    def test_round_trip(self):
        g = sample_gnp(25, 0.4, RngStream(8))
        buf = io.StringIO()
        write_edge_list(g, buf)
        assert read_edge_list(io.StringIO(buf.getvalue())) == g

    def test_canonical_text(self):
        text = io.StringIO()
        write_edge_list(build_graph(3, [(1, 2), (0, 1)]), text)
        assert text.getvalue() == "N=3\n0 1\n1 2\n"

    def test_file_paths(self, tmp_path):
        g = cycle_graph(5)
        path = str(tmp_path / "c5.edges")
        write_edge_list(g, path)
        assert read_edge_list(path) == g

    def test_bad_header(self):
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("vertices=3\n0 1\n"))
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("N=x\n"))

    def test_bad_edge_lines(self):
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("N=3\n0\n"))
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("N=3\n1 0\n"))  # u < v required
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("N=3\n0 a\n"))
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO("N=3\n0 7\n"))

    def test_blank_lines_tolerated(self):
        g = read_edge_list(io.StringIO("N=3\n0 1\n\n1 2\n"))
        assert g.edge_count == 2


def test_rows_property_matches_adjacency():
    g = build_graph(4, [(0, 1), (2, 3)])
    rows = g.rows
    assert rows[0] == 0b0010
    assert rows[1] == 0b0001
    assert rows[2] == 0b1000
    assert rows[3] == 0b0100


def test_large_sparse_sample_uses_block_builder():
    # above the dense limit; exercises the streaming sampler end to end
    g = sample_gnp(2100, 0.001, RngStream(31))
    mean = 2100 * 2099 / 2 * 0.001
    assert abs(g.edge_count - mean) < 6 * np.sqrt(mean)
    eu, ev = g.edge_arrays()
    assert (eu < ev).all()

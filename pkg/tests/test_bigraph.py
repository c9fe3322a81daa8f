from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkvc.bigraph import (
    BipartiteGraph,
    GraphParseError,
    VertexSet,
    best_k,
    covered_edges,
    generate,
    generate_random,
    generate_semiregular,
    parse,
    serialize,
)

from .strategies import bipartite_graphs

K22 = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def brute_cover_count(graph, v1, v2):
    # independent oracle: direct edge scan
    return sum(1 for (u, v) in graph.edges if u in v1 or v in v2)


class TestCoveredEdges:
    def test_single_vertex_in_k22(self):
        assert covered_edges(K22, VertexSet.on_side(1, [0])) == 2

    def test_empty_set(self):
        assert covered_edges(K22, VertexSet.on_side(2, [])) == 0

    def test_two_edge_path_center(self):
        # edges (a1,b1), (a2,b1); picking b1 covers both
        g = BipartiteGraph(2, 1, [(0, 0), (1, 0)])
        assert covered_edges(g, VertexSet.on_side(2, [0])) == 2

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            covered_edges(K22, VertexSet.on_side(1, [5]))
        with pytest.raises(ValueError):
            covered_edges(K22, VertexSet.mixed(K22, v2=[7]))

    def test_mixed_set_counts_edges_once(self):
        assert covered_edges(K22, VertexSet.mixed(K22, v1=[0], v2=[0])) == 3

    @given(bipartite_graphs(), st.data())
    def test_matches_direct_scan(self, g, data):
        v1 = data.draw(st.sets(st.integers(0, g.n1 - 1)))
        v2 = data.draw(st.sets(st.integers(0, g.n2 - 1)))
        vs = VertexSet.mixed(g, v1, v2)
        assert covered_edges(g, vs) == brute_cover_count(g, v1, v2)

    @given(bipartite_graphs(), st.data())
    def test_monotone_and_subadditive(self, g, data):
        a = data.draw(st.sets(st.integers(0, g.n1 - 1)))
        b = data.draw(st.sets(st.integers(0, g.n1 - 1)))
        va = VertexSet.on_side(1, a)
        vb = VertexSet.on_side(1, b)
        vab = VertexSet.on_side(1, a | b)
        assert covered_edges(g, va) <= covered_edges(g, vab)
        assert covered_edges(g, vab) <= covered_edges(g, va) + covered_edges(g, vb)


class TestBestK:
    def test_unique_max_degree(self):
        # star center b0 with degree 3, isolated b1
        g = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 0)])
        assert best_k(g, 2, 1).members == (0,)

    def test_tie_breaks_to_smaller_index(self):
        g = BipartiteGraph(2, 2, [(0, 0), (1, 1)])
        assert best_k(g, 2, 1).members == (0,)

    def test_residual_degrees_respect_precovered(self):
        pre = K22.edge_mask(VertexSet.on_side(2, [0]))
        assert best_k(K22, 2, 1, precovered=pre).members == (1,)

    def test_clamps_oversized_k(self):
        assert len(best_k(K22, 1, 10)) == 2

    def test_forbidden_excluded(self):
        g = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 0)])
        got = best_k(g, 1, 1, forbidden=VertexSet.on_side(1, [0]))
        assert got.members == (1,)

    @given(bipartite_graphs(max_n1=4, max_n2=4), st.integers(0, 4))
    def test_optimal_among_same_side_sets(self, g, k):
        chosen = best_k(g, 1, k)
        k_eff = len(chosen)
        best_direct = max(
            (brute_cover_count(g, set(sub), set()) for sub in combinations(range(g.n1), k_eff)),
            default=0,
        )
        assert covered_edges(g, chosen) == best_direct


class TestGenerate:
    def test_random_p1_is_complete(self):
        for seed in (0, 1, 99):
            g = generate_random(2, 2, 1.0, seed)
            assert g.m == 4

    def test_random_deterministic(self):
        a = generate_random(5, 5, 0.5, 42)
        b = generate_random(5, 5, 0.5, 42)
        assert a.edges == b.edges

    def test_semiregular_degrees(self):
        g = generate_semiregular(4, 2, 1, 2, 3)
        assert g.deg1 == (1, 1, 1, 1)
        assert g.deg2 == (2, 2)

    def test_semiregular_infeasible(self):
        with pytest.raises(ValueError):
            generate_semiregular(3, 2, 1, 2, 0)

    def test_dispatch(self):
        g = generate("random", n1=2, n2=2, p=1.0, seed=0)
        assert g.m == 4
        with pytest.raises(ValueError):
            generate("nope")

    @given(st.integers(0, 2**32 - 1))
    def test_semiregular_always_regular(self, seed):
        g = generate_semiregular(6, 4, 2, 3, seed)
        assert set(g.deg1) == {2} and set(g.deg2) == {3}


class TestFileFormat:
    def test_parse_k11(self):
        g = parse("p bkvc 1 1 1\ne 0 0\n")
        assert (g.n1, g.n2, g.m) == (1, 1, 1)

    def test_round_trip_canonical(self):
        text = "p bkvc 2 2 3\ne 0 0\ne 0 1\ne 1 1\n"
        assert serialize(parse(text)) == text

    def test_comments_ignored(self):
        g = parse("c hello\np bkvc 1 1 1\nc mid\ne 0 0\n")
        assert g.m == 1

    def test_out_of_range_names_line(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse("p bkvc 2 2 1\ne 5 0\n")

    def test_duplicate_edge_names_line(self):
        with pytest.raises(GraphParseError, match="line 3"):
            parse("p bkvc 2 2 2\ne 0 0\ne 0 0\n")

    def test_malformed_header(self):
        with pytest.raises(GraphParseError, match="line 1"):
            parse("p wrong 1 1 0\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphParseError):
            parse("p bkvc 2 2 2\ne 0 0\n")

    @given(bipartite_graphs())
    def test_serialize_parse_identity(self, g):
        assert parse(serialize(g)) == g


class TestGraphBasics:
    def test_duplicate_edges_rejected(self):
        with pytest.raises(ValueError):
            BipartiteGraph(2, 2, [(0, 0), (0, 0)])

    def test_endpoint_range_checked(self):
        with pytest.raises(ValueError):
            BipartiteGraph(2, 2, [(2, 0)])

    def test_mirror_involution(self):
        g = BipartiteGraph(2, 3, [(0, 2), (1, 0)])
        assert g.mirror().mirror() == g

    def test_cut_size(self):
        got = K22.cut_size(VertexSet.on_side(1, [0]), VertexSet.on_side(2, [0, 1]))
        assert got == 2

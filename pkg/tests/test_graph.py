import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gridgenus.graph import (
    BudgetExhausted,
    DisconnectedGraphError,
    MinorWitness,
    SimpleGraph,
    block_decomposition,
    cartesian_product,
    complete_bipartite,
    complete_graph,
    connected_components,
    cycle_graph,
    find_isomorphism,
    find_minor,
    girth,
    is_isomorphic,
    path_graph,
    verify_minor_witness,
    witness_from_branch_sets,
)
from gridgenus.grid import grid_graph
from gridgenus.oracle import build_Tn


def to_nx(g: SimpleGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return SimpleGraph.from_edges(n, chosen)


class TestConstructors:
    def test_path(self):
        assert path_graph(3).sorted_edges == ((0, 1), (1, 2), (2, 3))
        assert (path_graph(0).vertex_count, path_graph(0).edge_count) == (1, 0)
        assert (path_graph(1).vertex_count, path_graph(1).edge_count) == (2, 1)

    def test_products(self):
        sq = cartesian_product(path_graph(1), path_graph(1))
        assert is_isomorphic(sq, cycle_graph(4))
        q3 = cartesian_product(sq, path_graph(1))
        assert (q3.vertex_count, q3.edge_count) == (8, 12)
        p22 = cartesian_product(path_graph(2), path_graph(2))
        assert (p22.vertex_count, p22.edge_count) == (9, 12)

    def test_product_indexing_is_row_major(self):
        g = cartesian_product(path_graph(2), path_graph(1))
        # (u, v) -> 2u + v
        assert g.has_edge(0, 1) and g.has_edge(0, 2) and not g.has_edge(1, 2)

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(2, [(1, 1)])

    @given(graphs())
    def test_text_round_trip(self, g):
        assert SimpleGraph.from_text(g.to_text()) == g

    def test_text_format(self):
        assert cycle_graph(3).to_text() == "3 3\n0 1\n0 2\n1 2\n"


class TestStructure:
    def test_girth(self):
        assert girth(grid_graph((1, 1))) == 4
        assert girth(path_graph(5)) == math.inf
        assert girth(complete_bipartite(3, 3)) == 4
        assert girth(complete_graph(4)) == 3

    @given(graphs())
    def test_girth_matches_networkx(self, g):
        cycles = nx.minimum_cycle_basis(to_nx(g))
        expect = min((len(c) for c in cycles), default=math.inf)
        assert girth(g) == expect

    def test_components(self):
        assert len(connected_components(grid_graph((1, 1, 1)))) == 1
        assert len(connected_components(cycle_graph(4).disjoint_union(cycle_graph(4)))) == 2
        assert len(connected_components(SimpleGraph.from_edges(3, []))) == 3

    @given(graphs())
    def test_components_partition(self, g):
        comps = connected_components(g)
        assert sum(len(c) for c in comps) == g.vertex_count
        assert sorted(map(sorted, comps)) == sorted(map(sorted, nx.connected_components(to_nx(g))))

    def test_blocks_examples(self):
        t2 = build_Tn(2)
        bd = block_decomposition(t2)
        assert len(bd.blocks) == 2
        assert all(is_isomorphic(b, complete_bipartite(3, 3)) for b in bd.block_graphs(t2))
        assert len(block_decomposition(path_graph(3)).blocks) == 3
        assert len(block_decomposition(cycle_graph(4)).blocks) == 1

    def test_blocks_reject_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            block_decomposition(SimpleGraph.from_edges(3, [(0, 1)]))

    @given(graphs())
    def test_blocks_match_networkx(self, g):
        if not g.is_connected() or g.edge_count == 0:
            return
        bd = block_decomposition(g)
        ours = sorted(sorted(b) for b in bd.blocks)
        theirs = sorted(sorted(b) for b in nx.biconnected_components(to_nx(g)))
        assert ours == theirs
        assert bd.cut_vertices == set(nx.articulation_points(to_nx(g)))
        # block edge sets partition the edges
        covered = [e for b in bd.blocks for e in g.edges if e[0] in b and e[1] in b]
        assert sorted(covered) == sorted(g.edges)


class TestIsomorphism:
    def test_examples(self):
        assert is_isomorphic(grid_graph((2, 1)), cartesian_product(path_graph(2), path_graph(1)))
        k33 = complete_bipartite(3, 3)
        minus = SimpleGraph.from_edges(6, sorted(k33.edges)[1:])
        assert not is_isomorphic(k33, minus)
        assert not is_isomorphic(grid_graph((1, 1, 1)), cycle_graph(8))

    def test_grid_permutations(self):
        assert is_isomorphic(grid_graph((2, 1, 3)), grid_graph((3, 2, 1)))
        assert is_isomorphic(grid_graph((2, 0, 3)), grid_graph((2, 3)))

    @settings(max_examples=60)
    @given(graphs(8), graphs(8))
    def test_matches_networkx(self, g, h):
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))
        assert is_isomorphic(g, h) == is_isomorphic(h, g)
        assert is_isomorphic(g, g)

    @given(graphs(8), st.randoms(use_true_random=False))
    def test_mapping_is_an_isomorphism(self, g, rnd):
        perm = list(range(g.vertex_count))
        rnd.shuffle(perm)
        h = SimpleGraph.from_edges(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])
        m = find_isomorphism(g, h)
        assert m is not None
        assert {tuple(sorted((m[u], m[v]))) for u, v in g.edges} == set(h.edges)

    def test_budget(self):
        with pytest.raises(BudgetExhausted):
            is_isomorphic(cycle_graph(12), cycle_graph(6).disjoint_union(cycle_graph(6)), budget=0)


class TestMinors:
    def test_identity_witness(self):
        k = complete_bipartite(3, 3)
        w = witness_from_branch_sets(k, k, {a: [a] for a in range(6)})
        assert verify_minor_witness(k, w)

    def test_found_in_221(self):
        host = grid_graph((2, 2, 1))
        w = find_minor(host, complete_bipartite(3, 3))
        assert w is not None and verify_minor_witness(host, w)

    @pytest.mark.parametrize("alpha", [1, 2])
    def test_none_in_planar_prism(self, alpha):
        assert find_minor(grid_graph((alpha, 1, 1)), complete_bipartite(3, 3)) is None

    def test_too_small(self):
        assert find_minor(grid_graph((1, 1)), complete_bipartite(3, 3)) is None
        k = complete_bipartite(3, 3)
        bad = witness_from_branch_sets(grid_graph((1, 1)), k, {a: [min(a, 3)] for a in range(6)})
        assert not verify_minor_witness(grid_graph((1, 1)), bad)

    def test_failure_reasons(self):
        host = cycle_graph(4)
        tri = complete_graph(3)
        overlap = MinorWitness(tri, {0: frozenset({0}), 1: frozenset({0, 1}), 2: frozenset({2})}, {})
        assert "overlap" in verify_minor_witness(host, overlap).reason
        split = MinorWitness(tri, {0: frozenset({0, 2}), 1: frozenset({1}), 2: frozenset({3})}, {})
        assert "disconnected" in verify_minor_witness(host, split).reason
        w = witness_from_branch_sets(host, tri, {0: [0, 1], 1: [2], 2: [3]})
        assert verify_minor_witness(host, w)
        missing = MinorWitness(tri, w.branch_sets, {})
        assert "missing edge" in verify_minor_witness(host, missing).reason

    def test_budget_distinct_from_none(self):
        with pytest.raises(BudgetExhausted):
            find_minor(grid_graph((3, 2, 1)), complete_bipartite(3, 4), budget=10)

    def test_witness_dict_round_trip(self):
        host = grid_graph((2, 2, 1))
        w = find_minor(host, complete_bipartite(3, 3))
        back = MinorWitness.from_dict(w.to_dict())
        assert back.branch_sets == w.branch_sets and verify_minor_witness(host, back)

    @settings(max_examples=40, deadline=None)
    @given(graphs(7))
    def test_triangle_minor_iff_cycle(self, g):
        # K3 is a minor exactly when the graph is not a forest
        has_cycle = g.edge_count > g.vertex_count - len(connected_components(g))
        w = find_minor(g, complete_graph(3))
        assert (w is not None) == has_cycle
        if w is not None:
            assert verify_minor_witness(g, w)

import json
import math
from importlib import resources

import pytest

from gridgenus.formulas import bipartite_genus, exact_genus, max_genus
from gridgenus.graph import (
    BudgetExhausted,
    SimpleGraph,
    block_decomposition,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    is_isomorphic,
    path_graph,
    witness_from_branch_sets,
)
from gridgenus.grid import coord_to_index, grid_graph
from gridgenus.oracle import (
    PackingCertificate,
    build_Tn,
    certified_packing_bound,
    enumeration_size,
    exhaustive_block_oracle,
    exhaustive_genus,
    formula_or_exhaustive_oracle,
    genus_by_blocks,
    grid_packing_certificates,
    named_graph,
    packing_lower_bound,
    verify_construction_suite,
    verify_packing,
)
from gridgenus.rotation import trace_faces


class TestExhaustive:
    def test_cube(self):
        r = exhaustive_genus(grid_graph((1, 1, 1)))
        assert r.exhausted and r.enumerated <= 256
        assert (r.min_genus, r.max_genus, r.spectrum) == (0, 2, frozenset({0, 1, 2}))

    def test_k33(self):
        r = exhaustive_genus(complete_bipartite(3, 3))
        assert r.exhausted and r.min_genus == 1 and r.total <= 64

    def test_k4(self):
        r = exhaustive_genus(complete_graph(4))
        assert (r.min_genus, r.max_genus) == (0, 1)

    def test_k5(self):
        r = exhaustive_genus(complete_graph(5))
        assert r.min_genus == 1 and r.contiguous

    def test_extremal_systems_trace_to_reported_values(self):
        r = exhaustive_genus(grid_graph((2, 1, 1)))
        assert trace_faces(r.min_embedding).genus == r.min_genus == 0
        assert trace_faces(r.max_embedding).genus == r.max_genus == max_genus((2, 1, 1))

    @pytest.mark.parametrize("quotient", [True, False])
    def test_quotient_does_not_change_spectrum(self, quotient):
        g = complete_bipartite(3, 3)
        full = exhaustive_genus(g, quotient=False)
        assert exhaustive_genus(g, quotient=quotient).spectrum == full.spectrum
        assert full.total == 2 * exhaustive_genus(g).total

    @pytest.mark.parametrize("params", [(1, 1), (2, 1), (3, 1), (2, 2), (1, 1, 1), (2, 1, 1)])
    def test_grids_upper_embeddable_and_contiguous(self, params):
        r = exhaustive_genus(grid_graph(params))
        assert r.exhausted and r.contiguous
        assert r.max_genus == max_genus(params)
        assert r.min_genus == exact_genus(params).value

    def test_budget_partial(self):
        g = grid_graph((2, 2))
        r = exhaustive_genus(g, budget=10)
        assert not r.exhausted and r.enumerated == 10 and r.total == enumeration_size(g)

    def test_counts(self):
        # (deg-1)! per vertex, halved at one maximum-degree vertex
        g = grid_graph((1, 1, 1))
        assert enumeration_size(g, quotient=False) == 2**8
        assert enumeration_size(g) == 2**7
        assert enumeration_size(complete_graph(4), quotient=False) == 16

    def test_tree(self):
        r = exhaustive_genus(path_graph(4))
        assert r.spectrum == frozenset({0})


class TestBlocks:
    def test_tn_structure(self):
        assert is_isomorphic(build_Tn(1), complete_bipartite(3, 3))
        t2 = build_Tn(2)
        assert (t2.vertex_count, t2.edge_count) == (11, 18)
        t3 = build_Tn(3)
        bd = block_decomposition(t3)
        assert len(bd.blocks) == 3
        assert all(is_isomorphic(b, complete_bipartite(3, 3)) for b in bd.block_graphs(t3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_tn_genus(self, n):
        assert genus_by_blocks(build_Tn(n), exhaustive_block_oracle()) == n

    def test_disjoint_and_tree(self):
        k = complete_bipartite(3, 3)
        assert genus_by_blocks(k.disjoint_union(k)) == 2
        star = SimpleGraph.from_edges(5, [(0, i) for i in range(1, 5)])
        assert genus_by_blocks(star) == 0
        assert genus_by_blocks(path_graph(6)) == 0

    def test_formula_oracle(self):
        oracle = formula_or_exhaustive_oracle()
        assert oracle(complete_bipartite(3, 12)) == bipartite_genus(3, 12) == 3
        assert oracle(cycle_graph(5)) == 0

    def test_budget_propagates(self):
        with pytest.raises(BudgetExhausted):
            genus_by_blocks(complete_graph(6), exhaustive_block_oracle(budget=100))

    def test_named(self):
        assert named_graph("K3,8") == complete_bipartite(3, 8)
        assert named_graph("T2") == build_Tn(2)
        with pytest.raises(ValueError):
            named_graph("Q3")


def _fixture(host):
    data = json.loads(resources.files("gridgenus").joinpath("fixtures/packings.json").read_text())
    return next(c for c in data["certificates"] if c["host"] == list(host))


class TestPacking:
    def test_k33_in_221(self):
        cert = packing_lower_bound(grid_graph((2, 2, 1)), [complete_bipartite(3, 3)])
        assert cert.implied_lower_bound == 1
        assert verify_packing(grid_graph((2, 2, 1)), cert)

    def test_none_in_planar_grid(self):
        assert packing_lower_bound(grid_graph((3, 3)), [complete_bipartite(3, 3)]) is None

    def test_t2_in_421(self):
        # the first T2 of the G(4,4,1) fixture lies inside the G(4,2,1) box
        item = _fixture((4, 4, 1))["witnesses"][0]
        host = grid_graph((4, 2, 1))
        sets = {a: [coord_to_index((4, 2, 1), c) for c in cs] for a, cs in enumerate(item["branch_sets"])}
        w = witness_from_branch_sets(host, build_Tn(2), sets)
        cert = PackingCertificate((w,), (genus_by_blocks(build_Tn(2)),), ("T2",))
        assert verify_packing(host, cert) and cert.implied_lower_bound == 2

    @pytest.mark.parametrize(
        "params, bound, names",
        [
            ((4, 2, 1), 2, ("K3,3", "K3,3")),
            ((2, 2, 2), 2, ("K3,8",)),
            ((3, 2, 2), 3, ("K3,12",)),
            ((4, 4, 1), 4, ("T2", "T2")),
        ],
    )
    def test_fixtures(self, params, bound, names):
        c = certified_packing_bound(params)
        assert c.fixture_host == params
        assert c.certificate.implied_lower_bound == bound
        assert c.certificate.target_names == names
        assert verify_packing(grid_graph(params), c.certificate)

    def test_fixtures_apply_to_larger_and_permuted_specs(self):
        assert certified_packing_bound((5, 4, 1)).certificate.implied_lower_bound == 4
        c = certified_packing_bound((1, 2, 4))
        assert c.fixture_host == (4, 2, 1)
        assert verify_packing(grid_graph((1, 2, 4)), c.certificate)
        assert certified_packing_bound((3, 3, 1)) is None
        assert grid_packing_certificates((2, 2, 1, 1)) == []

    def test_overlap_rejected(self):
        host = grid_graph((2, 2, 1))
        cert = packing_lower_bound(host, [complete_bipartite(3, 3)])
        w = cert.disjoint_witnesses[0]
        doubled = PackingCertificate((w, w), (1, 1))
        assert not verify_packing(host, doubled)

    def test_two_k33_need_more_room(self):
        # 12 vertices of G(2,1,1) cannot hold two disjoint K3,3 minors (each needs 6)
        assert packing_lower_bound(grid_graph((2, 1, 1)), [complete_bipartite(3, 3)] * 2) is None


class TestSuite:
    def test_cube_only(self):
        rep = verify_construction_suite(8)
        assert rep.ok
        three_d = {c.spec for c in rep.checks if len(c.spec) == 3}
        assert three_d == {(1, 1, 1)}
        ex = next(c for c in rep.checks if c.spec == (1, 1, 1) and c.name == "exhaustive")
        assert ex.ok and "{0,1,2}" in ex.detail

    def test_empty(self):
        rep = verify_construction_suite(0)
        assert rep.ok and rep.checks == ()

    def test_thirty(self):
        rep = verify_construction_suite(30)
        assert rep.ok, rep.discrepancies
        specs = {c.spec for c in rep.checks}
        assert {(1, 1, 1), (2, 1, 1), (2, 2, 1)} <= specs

    def test_sixty_four_formula_level(self):
        rep = verify_construction_suite(64, budget=1)
        assert rep.ok, rep.discrepancies
        names = {c.name for c in rep.checks if c.spec == (3, 3, 3)}
        assert "construction" in names and "exhaustive" not in names


def test_enumeration_size_non_regular():
    g = complete_bipartite(2, 4)
    expect = math.prod(math.factorial(d - 1) for d in g.degrees())
    assert enumeration_size(g, quotient=False) == expect

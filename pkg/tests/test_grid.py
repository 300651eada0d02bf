import itertools
import math
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from gridgenus.graph import cartesian_product, girth, is_isomorphic, path_graph
from gridgenus.grid import (
    GridSpec,
    betti,
    coord_to_index,
    coordinates,
    counts,
    grid_graph,
    index_to_coord,
    parity_profile,
    specs_up_to,
)

small_params = st.lists(st.integers(0, 4), min_size=1, max_size=4).filter(
    lambda ps: math.prod(a + 1 for a in ps) <= 200
)


@pytest.mark.parametrize(
    "params, expect",
    [((1, 1, 1), (8, 12)), ((2, 2, 1), (18, 33)), ((3, 3, 3), (64, 144)), ((2, 2, 2), (27, 54)), ((5,), (6, 5))],
)
def test_counts_examples(params, expect):
    assert counts(params) == expect
    g = grid_graph(params)
    assert (g.vertex_count, g.edge_count) == expect


def test_betti_examples():
    assert betti((1, 1, 1)) == 5
    assert betti((7,)) == 0
    assert betti((1, 1)) == 1


def test_parity_profile_examples():
    assert parity_profile((3, 3, 3)) == (3, 0)
    assert parity_profile((2, 2, 1)) == (1, 2)
    assert parity_profile((0, 1, 1, 1)) == (3, 0)


def test_spec_validation_and_normal_form():
    with pytest.raises(ValueError):
        GridSpec([])
    with pytest.raises(ValueError):
        GridSpec([2, -1])
    s = GridSpec.of(1, 0, 3, 2)
    assert s.normalized() == (3, 2, 1)
    assert s.dimension == 3 and s.k == 4
    assert str(s) == "G(1,0,3,2)"
    assert GridSpec.of(0, 0).normalized() == ()


def test_sweep_counts_match_graph():
    for spec in specs_up_to(500):
        g = grid_graph(spec)
        assert counts(spec) == (g.vertex_count, g.edge_count), spec


def test_specs_up_to_is_complete():
    specs = specs_up_to(30)
    assert all(math.prod(a + 1 for a in s.params) <= 30 for s in specs)
    assert all(list(s.params) == sorted(s.params, reverse=True) for s in specs)
    brute = {
        tuple(sorted(p, reverse=True))
        for k in range(1, 5)
        for p in itertools.product(range(1, 30), repeat=k)
        if math.prod(a + 1 for a in p) <= 30
    }
    assert {s.params for s in specs} == brute


@given(small_params)
def test_coordinate_round_trip(params):
    for i, c in enumerate(coordinates(params)):
        assert coord_to_index(params, c) == i
        assert index_to_coord(params, i) == c


@given(small_params)
def test_adjacency_rule(params):
    g = grid_graph(params)
    coords = coordinates(params)
    for u, v in g.edges:
        diff = [abs(a - b) for a, b in zip(coords[u], coords[v])]
        assert sorted(diff)[-1] == 1 and sum(diff) == 1


def test_coordinate_bounds():
    with pytest.raises(ValueError):
        coord_to_index((2, 1), (3, 0))
    with pytest.raises(ValueError):
        coord_to_index((2, 1), (0,))


@given(small_params)
def test_girth(params):
    spec = GridSpec(params)
    expect = 4 if spec.dimension > 1 else math.inf
    assert girth(grid_graph(spec)) == expect


@given(small_params, st.randoms(use_true_random=False))
def test_permutation_and_zero_invariance(params, rnd):
    shuffled = list(params)
    rnd.shuffle(shuffled)
    g = grid_graph(params)
    assert is_isomorphic(g, grid_graph(shuffled))
    nonzero = [a for a in params if a] or [0]
    assert is_isomorphic(g, grid_graph(nonzero))


def test_direct_builder_matches_iterated_product():
    for spec in specs_up_to(120):
        for params in {spec.params, tuple(reversed(spec.params))}:
            assert grid_graph(params) == reduce(cartesian_product, (path_graph(a) for a in params)), params

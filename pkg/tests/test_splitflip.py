from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graph_and_subset, graphs, span_rank
from rwiso.corpus import random_graph, random_split_pair, random_subset, stream
from rwiso.f2 import cut_rank
from rwiso.graph import (
    Graph,
    apply_permutation,
    brute_force_isomorphic,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    is_isomorphism,
    mask_of,
    path_graph,
)
from rwiso.splitflip import (
    FlipExtension,
    FlipFunction,
    OrderedSplitPair,
    comp_flip_extension,
    components_flip,
    equiv_class,
    find_flip_extension,
    find_flip_function,
    find_split_pair,
    flip_extension_graph,
    flip_graph,
    is_nice,
    is_split_pair,
    nice_split_pairs,
    respects_cut,
    x_vector,
)
from rwiso.wl import colour_refinement, individualise, partition_of


def nbhd(G: Graph, v: int, S) -> set[int]:
    return set(G.neighbours(v)) & set(S)


# --------------------------------------------------------------------------
# vectors and split pairs


def test_x_vector_examples():
    assert x_vector(complete_graph(3), [0, 1], 0).to_list() == [1]
    assert x_vector(cycle_graph(4), [0, 1], 0).to_list() == [0, 1]
    assert x_vector(empty_graph(3), [0], 0).to_list() == [0, 0]
    with pytest.raises(ValueError):
        x_vector(cycle_graph(4), [0, 1], 2)


def test_split_pair_examples():
    assert find_split_pair(cycle_graph(5), range(5)) == OrderedSplitPair((), (), (0, 1, 2, 3, 4))
    assert find_split_pair(cycle_graph(5), []) == OrderedSplitPair((), (), ())
    sp = find_split_pair(complete_graph(4), [0, 1])
    assert (len(sp.a), len(sp.b)) == (1, 1)
    sp = find_split_pair(cycle_graph(5), [0, 1])
    assert (len(sp.a), len(sp.b)) == (2, 2) and sp.a == (0, 1) and sp.b == (2, 4)


@given(graph_and_subset(max_n=9))
def test_split_pair_invariants(gx):
    G, X = gx
    sp = find_split_pair(G, X)
    rho = cut_rank(G, X)
    assert len(sp.a) == len(sp.b) == rho
    assert set(sp.a) <= set(X) and not set(sp.b) & set(X)
    assert is_split_pair(G, X, sp.a, sp.b)


def test_is_split_pair_rejects():
    G = cycle_graph(5)
    assert not is_split_pair(G, [0, 1], (0,), (2, 4))
    assert not is_split_pair(G, [0, 1], (0, 0), (2, 4))
    assert not is_split_pair(G, [0, 1], (0, 2), (2, 4))
    assert not is_split_pair(G, [0, 1], (0, 1), (2, 9))


@given(graph_and_subset(max_n=8), st.data())
def test_independence_restricts_to_subsets(gx, data):
    G, X = gx
    Y = data.draw(st.sets(st.sampled_from(X))) if X else set()
    outside_x = G.vertex_mask & ~mask_of(X)
    outside_y = G.vertex_mask & ~mask_of(Y)
    S = [v for v in X if data.draw(st.booleans())]
    rows = [G.adj[v] & outside_x for v in S]
    if span_rank(rows) == len(rows):
        rows_y = [G.adj[v] & outside_y for v in S if v in Y]
        assert span_rank(rows_y) == len(rows_y)


@given(graph_and_subset(max_n=9))
def test_same_split_neighbours_means_same_cut_neighbours(gx):
    G, X = gx
    sp = find_split_pair(G, X)
    rest = [v for v in range(G.n) if v not in X]
    chi = colour_refinement(individualise(G, sp.a + sp.b))
    for v in X:
        for w in X:
            if nbhd(G, v, sp.b) == nbhd(G, w, sp.b):
                assert nbhd(G, v, rest) == nbhd(G, w, rest)
            if chi[v] == chi[w]:
                assert nbhd(G, v, rest) == nbhd(G, w, rest)
    for v in rest:
        for w in rest:
            if nbhd(G, v, sp.a) == nbhd(G, w, sp.a):
                assert nbhd(G, v, X) == nbhd(G, w, X)


# --------------------------------------------------------------------------
# nice split pairs


def test_nice_pairs_edgeless():
    G = empty_graph(4)
    sp = find_split_pair(G, range(4))
    p1, p2 = nice_split_pairs(G, range(4), [0, 1], [2, 3], sp)
    assert p1.a == p1.b == p2.a == p2.b == ()


def test_nice_pairs_k4():
    G = complete_graph(4)
    sp = find_split_pair(G, range(4))
    p1, p2 = nice_split_pairs(G, range(4), [0, 1], [2, 3], sp)
    assert is_nice(sp, p1, p2)
    assert all(len(p.a) == len(p.b) == 1 for p in (p1, p2))


def test_nice_pairs_errors():
    G = cycle_graph(6)
    sp = find_split_pair(G, [0, 1, 2])
    with pytest.raises(ValueError):
        nice_split_pairs(G, [0, 1, 2], [0], [1], sp)
    with pytest.raises(ValueError):
        nice_split_pairs(G, [0, 1, 2], [0, 1], [1, 2], sp)
    with pytest.raises(ValueError):
        nice_split_pairs(G, [0, 1, 2], [0], [1, 2], OrderedSplitPair((0,), (3,), (0, 1, 2)))


def _random_nice_instance(rng):
    n = int(rng.integers(2, 9))
    G = random_graph(rng, n)
    X = random_subset(rng, n, 0.7)
    side = rng.random(len(X)) < 0.5
    X1 = tuple(v for v, s in zip(X, side) if s)
    X2 = tuple(v for v, s in zip(X, side) if not s)
    sp = random_split_pair(rng, G, X)
    return G, X, X1, X2, sp


def test_nice_pairs_random_instances():
    rng = stream(11, "test-nice")
    for _ in range(100):
        G, X, X1, X2, sp = _random_nice_instance(rng)
        p1, p2 = nice_split_pairs(G, X, X1, X2, sp)
        assert is_split_pair(G, X1, p1.a, p1.b) and is_split_pair(G, X2, p2.a, p2.b)
        assert is_nice(sp, p1, p2)
        outside = set(range(G.n)) - set(X)
        assert set(p1.b) & outside <= set(sp.b) and set(p2.b) & outside <= set(sp.b)


def test_nice_pairs_pass_equivalence_up_and_across():
    rng = stream(12, "test-nice-equiv")
    for _ in range(100):
        G, X, X1, X2, sp = _random_nice_instance(rng)
        p1, p2 = nice_split_pairs(G, X, X1, X2, sp)
        for mine, other in ((p1, p2), (p2, p1)):
            for v in mine.X:
                cls = set(equiv_class(G, (mine.a, mine.b), v))
                for w in cls & set(mine.X):
                    assert w in equiv_class(G, (sp.a, sp.b), v)
                    assert w in equiv_class(G, (other.a, other.b), v)


# --------------------------------------------------------------------------
# flip functions


def test_flip_graph_basics():
    G = cycle_graph(5)
    chi = colour_refinement(G)
    assert flip_graph(G, chi, FlipFunction.constant(chi.colours, 0)) == G
    assert flip_graph(G, chi, FlipFunction.constant(chi.colours, 1)) == complement(G)
    with pytest.raises(ValueError):
        flip_graph(G, chi, FlipFunction({}))


def test_flip_function_symmetric_storage():
    f = FlipFunction({(2, 1): 1, (1, 1): 0})
    assert f(1, 2) == f(2, 1) == 1
    with pytest.raises(ValueError):
        FlipFunction({(1, 2): 1, (2, 1): 0})
    with pytest.raises(ValueError):
        FlipFunction({(1, 2): 2})


@given(graphs(1, 7, colours=3), st.data())
def test_flip_is_an_involution(G, data):
    cs = sorted(set(G.colours))
    ones = data.draw(st.sets(st.sampled_from([(c, d) for c in cs for d in cs if c <= d])))
    f = FlipFunction.from_ones(cs, ones)
    assert flip_graph(flip_graph(G, G.colours, f), G.colours, f) == G


def test_components_flip_examples():
    G = path_graph(4)
    chi = colour_refinement(G)
    assert components_flip(G, chi, FlipFunction.constant(chi.colours, 0)) == connected_components(G)
    K = complete_graph(4)
    chi = colour_refinement(K)
    assert components_flip(K, chi, FlipFunction.constant(chi.colours, 1)) == [(0,), (1,), (2,), (3,)]


def test_flip_function_no_crossing_edges():
    G = Graph.from_edges(4, [(0, 1), (2, 3)])
    X = [0, 1]
    f, chi = find_flip_function(G, X, find_split_pair(G, X))
    assert all(f(chi[v], chi[w]) == 0 for v in X for w in (2, 3))


def test_flip_function_k4():
    G = complete_graph(4)
    X = [0, 1]
    f, chi = find_flip_function(G, X, find_split_pair(G, X))
    assert respects_cut(components_flip(G, chi, f), X)


def test_find_flip_function_rejects_bad_pair():
    G = complete_graph(4)
    with pytest.raises(ValueError):
        find_flip_function(G, [0, 1], OrderedSplitPair((0,), (0,), (0, 1)))


@given(graph_and_subset(max_n=9))
def test_flip_function_separates_cut(gx):
    G, X = gx
    f, chi = find_flip_function(G, X, find_split_pair(G, X))
    assert respects_cut(components_flip(G, chi, f), X)


@given(graph_and_subset(max_n=8))
def test_flip_refinement_partition_on_stable_colouring(gx):
    G, X = gx
    f, chi = find_flip_function(G, X, find_split_pair(G, X))
    coloured = G.with_colours(chi.colours)
    flipped = flip_graph(coloured, chi, f)
    assert partition_of(colour_refinement(flipped).colours) == partition_of(chi.colours)


@given(graphs(1, 6, colours=2), st.data())
def test_flips_preserve_isomorphisms(G, data):
    pi = data.draw(st.permutations(list(range(G.n))))
    H = apply_permutation(G, pi) if data.draw(st.booleans()) else data.draw(graphs(G.n, G.n, colours=2))
    cs = sorted(set(G.colours) | set(H.colours))
    ones = data.draw(st.sets(st.sampled_from([(c, d) for c in cs for d in cs if c <= d])))
    f = FlipFunction.from_ones(cs, ones)
    Gf, Hf = flip_graph(G, G.colours, f), flip_graph(H, H.colours, f)
    phi = data.draw(st.permutations(list(range(G.n))))
    assert is_isomorphism(G, H, phi) == is_isomorphism(Gf, Hf, phi)
    assert (brute_force_isomorphic(G, H) is None) == (brute_force_isomorphic(Gf, Hf) is None)


# --------------------------------------------------------------------------
# flip extensions


def test_equiv_class_examples():
    assert equiv_class(cycle_graph(5), ((), ()), 2) == (0, 1, 2, 3, 4)
    assert equiv_class(complete_graph(3), ((0,), ()), 1) == (1, 2)


@given(graphs(1, 8), st.data())
def test_equiv_class_matches_pattern_comparison(G, data):
    a = tuple(data.draw(st.lists(st.integers(0, G.n - 1), max_size=3)))
    b = tuple(data.draw(st.lists(st.integers(0, G.n - 1), max_size=3)))
    v = data.draw(st.integers(0, G.n - 1))
    anchors = set(a) | set(b)
    assert set(equiv_class(G, (a, b), v)) == {w for w in range(G.n) if nbhd(G, w, anchors) == nbhd(G, v, anchors)}


def test_extension_all_bottom_is_edgeless():
    G = complete_graph(4)
    assert flip_extension_graph(G, FlipExtension((0,), (1,), {})).m == 0


def test_extension_threshold_n_keeps_edges():
    G = cycle_graph(6)
    s = FlipExtension((0,), (3,), {(M, N): 6 for M in range(4) for N in range(M, 4)})
    assert flip_extension_graph(G, s) == G


def test_extension_validation():
    with pytest.raises(ValueError):
        FlipExtension((0,), (), {(0, 1): 2, (1, 0): 2})
    with pytest.raises(ValueError):
        FlipExtension((0,), (), {(0, 4): 2})
    with pytest.raises(ValueError):
        FlipExtension((0,), (), {(0, 1): 0})
    with pytest.raises(ValueError):
        flip_extension_graph(path_graph(3), FlipExtension((0,), (), {(0, 1): 9}))


def test_extension_asymmetric_decision_raises():
    # one class; the pair 0-1 has counts 1 and 2 against threshold 2
    with pytest.raises(ValueError, match="asymmetric"):
        flip_extension_graph(path_graph(3), FlipExtension((), (), {(0, 0): 2}))


def test_extension_whole_vertex_set():
    G = cycle_graph(5)
    s = find_flip_extension(G, range(5), find_split_pair(G, range(5)))
    assert s.a == s.b == ()
    assert respects_cut(connected_components(flip_extension_graph(G, s)), range(5))


def test_extension_k4():
    G = complete_graph(4)
    X = [0, 1]
    s = find_flip_extension(G, X, find_split_pair(G, X))
    comps = connected_components(flip_extension_graph(G, s))
    assert respects_cut(comps, X)
    assert comp_flip_extension(G, s, 0) == next(C for C in comps if 0 in C)


@given(graph_and_subset(max_n=9), st.integers(0, 2**32 - 1))
def test_extension_separates_cut(gx, seed):
    G, X = gx
    sp = random_split_pair(np.random.default_rng(seed), G, X)
    s = find_flip_extension(G, X, sp)
    for (M, N) in s.table:
        assert M == N or (N, M) not in s.table
    assert respects_cut(connected_components(flip_extension_graph(G, s)), X)


def test_comp_flip_extension_range():
    G = path_graph(3)
    s = find_flip_extension(G, [0], find_split_pair(G, [0]))
    with pytest.raises(ValueError):
        comp_flip_extension(G, s, 7)

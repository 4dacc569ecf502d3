from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given

from conftest import graph_and_permutation, graphs
from rwiso.canon import (
    CanonicalForm,
    canonical_graph,
    canonical_ordering,
    canonical_string,
    canonisation_rounds,
    canonise,
    iso_test,
    orbit_partition,
)
from rwiso.corpus import distance_hereditary_graphs
from rwiso.graph import (
    GuardError,
    apply_permutation,
    automorphism_orbits,
    brute_force_isomorphic,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_isomorphism,
    path_graph,
    petersen_graph,
)
from rwiso.wl import wl_distinguishes

TWO_C3 = disjoint_union(cycle_graph(3), cycle_graph(3))


def test_single_vertex():
    form = canonise(empty_graph(1), 1)
    assert form == CanonicalForm(1, frozenset(), (0,))
    assert canonical_string(form) == "n=1;colours=0;edges="


def test_k2_string():
    assert canonical_string(canonise(complete_graph(2), 1)) == "n=2;colours=0,0;edges=(0,1)"


def test_empty_graph_of_order_zero():
    assert canonical_string(canonise(empty_graph(0), 1)) == "n=0;colours=;edges="


def test_p3_labellings_agree():
    a = canonise(path_graph(3), 1)
    b = canonise(apply_permutation(path_graph(3), (1, 0, 2)), 1)
    assert a == b
    # ends share the least diagonal colour, so vertex 0 goes first, its twin second
    assert canonical_string(a) == "n=3;colours=0,0,0;edges=(0,2),(1,2)"


def test_colours_are_carried():
    G = path_graph(3).with_colours([5, 1, 5])
    assert canonical_string(canonise(G, 1)) == "n=3;colours=1,5,5;edges=(0,1),(0,2)"


def test_orbit_examples():
    assert orbit_partition(cycle_graph(5), 1) == [(0, 1, 2, 3, 4)]
    assert orbit_partition(path_graph(3), 1) == [(0, 2), (1,)]
    assert orbit_partition(empty_graph(0), 1) == []


def test_iso_test_examples():
    assert not iso_test(cycle_graph(6), TWO_C3, 1)
    assert iso_test(petersen_graph(), apply_permutation(petersen_graph(), tuple(reversed(range(10)))), 2)
    assert not iso_test(path_graph(3), path_graph(4), 1)


def test_guard():
    with pytest.raises(GuardError):
        canonise(empty_graph(40), 3)
    with pytest.raises(ValueError):
        orbit_partition(path_graph(3), 0)


@given(graphs(0, 7, colours=2))
def test_canonical_form_is_isomorphic(G):
    form = canonise(G, 2)
    order = canonical_ordering(G, 2)
    assert sorted(order) == list(range(G.n))
    position = [0] * G.n
    for i, v in enumerate(order):
        position[v] = i
    assert is_isomorphism(G, canonical_graph(form), position)


@given(graph_and_permutation(max_n=7, colours=2))
def test_invariant_under_relabelling(gp):
    G, pi = gp
    H = apply_permutation(G, pi)
    assert canonical_string(canonise(G, 2)) == canonical_string(canonise(H, 2))
    # the individualised graphs stay WL-equivalent round by round
    for (_, Gi), (_, Hi) in zip(canonisation_rounds(G, 2), canonisation_rounds(H, 2)):
        assert not wl_distinguishes(Gi, Hi, 3)


@given(graphs(1, 7))
def test_orbits_refine_colour_classes(G):
    classes = orbit_partition(G, 2)
    for orbit in automorphism_orbits(G):
        assert any(set(orbit) <= set(c) for c in classes)


@pytest.mark.parametrize("n", range(1, 7))
def test_orbits_exact_on_rank_width_one(n):
    for G in distance_hereditary_graphs(n):
        assert orbit_partition(G, 2) == automorphism_orbits(G)


@pytest.mark.parametrize("n", range(1, 7))
def test_representatives_get_distinct_strings(n):
    reps = distance_hereditary_graphs(n)
    strings = {canonical_string(canonise(G, 2)) for G in reps}
    assert len(strings) == len(reps)


@given(graphs(1, 6), graphs(1, 6))
def test_iso_test_agrees_with_brute_force(G, H):
    assert iso_test(G, H, 2, check=True) == (brute_force_isomorphic(G, H) is not None)


def test_iso_test_with_check_on_isomorphic_pair():
    G = distance_hereditary_graphs(6)[40]
    H = apply_permutation(G, (5, 3, 1, 0, 2, 4))
    assert iso_test(G, H, 2, check=True)


@pytest.mark.slow
def test_seven_dimensional_smoke():
    G = path_graph(4)
    assert canonise(G, 6) == canonise(apply_permutation(G, (3, 1, 0, 2)), 6)
    for a, b in combinations(distance_hereditary_graphs(4), 2):
        assert wl_distinguishes(a, b, 7)

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graph_and_subset, span_rank
from rwiso.f2 import (
    BitMatrix,
    BitVector,
    cut_matrix,
    cut_rank,
    extend_basis,
    greedy_basis,
    rank_f2,
)
from rwiso.graph import complete_graph, cycle_graph, empty_graph, path_graph

bit_rows = st.lists(st.integers(0, (1 << 9) - 1), max_size=9)


@given(bit_rows)
def test_rank_matches_span_count(rows):
    assert rank_f2(BitMatrix(len(rows), 9, tuple(rows))) == span_rank(rows)


def test_rank_matches_dense_elimination():
    rng = np.random.default_rng(3)
    for _ in range(50):
        A = rng.integers(0, 2, size=(7, 11))
        M = BitMatrix.from_lists(A.tolist())
        # independent dense elimination mod 2
        B, r = A.copy(), 0
        for c in range(B.shape[1]):
            piv = next((i for i in range(r, B.shape[0]) if B[i, c]), None)
            if piv is None:
                continue
            B[[r, piv]] = B[[piv, r]]
            for i in range(B.shape[0]):
                if i != r and B[i, c]:
                    B[i] ^= B[r]
            r += 1
        assert rank_f2(M) == r


def test_bitvector_roundtrip_and_bounds():
    v = BitVector.from_list([1, 0, 1])
    assert v.to_list() == [1, 0, 1] and v[2] == 1
    with pytest.raises(ValueError):
        BitVector(2, 0b100)
    with pytest.raises(IndexError):
        v[3]


def test_cut_matrix_layout():
    M = cut_matrix(cycle_graph(4), [0, 1])
    # rows 0, 1; columns 2, 3
    assert M.to_lists() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_graph_cuts_rank_one(n):
    K = complete_graph(n)
    assert all(cut_rank(K, X) == 1 for r in range(1, n) for X in combinations(range(n), r))


def test_cut_rank_examples():
    assert cut_rank(empty_graph(4), [0, 1]) == 0
    assert cut_rank(path_graph(4), [0, 1]) == 1
    assert cut_rank(cycle_graph(5), [0, 1]) == 2
    assert cut_rank(path_graph(3), []) == 0 and cut_rank(path_graph(3), [0, 1, 2]) == 0


@given(graph_and_subset(max_n=8))
def test_cut_rank_symmetric(gx):
    G, X = gx
    rest = [v for v in range(G.n) if v not in X]
    assert cut_rank(G, X) == cut_rank(G, rest)
    assert cut_rank(G, X) == span_rank(list(cut_matrix(G, X).data))


def test_cut_rank_symmetric_exhaustive_cycles_and_paths():
    for G in (cycle_graph(8), path_graph(8)):
        for r in range(9):
            for X in combinations(range(8), r):
                rest = [v for v in range(8) if v not in X]
                assert cut_rank(G, X) == cut_rank(G, rest)


@given(graph_and_subset(max_n=8), graph_and_subset(max_n=8))
def test_cut_rank_submodular(a, b):
    G, X = a
    Y = tuple(v for v in b[1] if v < G.n)
    sx, sy = set(X), set(Y)
    lhs = cut_rank(G, X) + cut_rank(G, Y)
    assert lhs >= cut_rank(G, sx | sy) + cut_rank(G, sx & sy)


@given(bit_rows)
def test_greedy_basis_is_first_fit_basis(rows):
    vecs = [BitVector(9, r) for r in rows]
    chosen = greedy_basis(vecs)
    assert chosen == sorted(chosen)
    assert span_rank([rows[i] for i in chosen]) == len(chosen) == span_rank(rows)
    # first fit: every skipped row depends on the chosen rows before it
    for i in range(len(rows)):
        if i not in chosen:
            before = [rows[j] for j in chosen if j < i]
            assert span_rank(before + [rows[i]]) == span_rank(before)


def test_extend_basis_keeps_seed_first():
    vecs = [BitVector(3, b) for b in (0b001, 0b010, 0b011, 0b100)]
    assert extend_basis([2], vecs) == [2, 0, 3]
    with pytest.raises(ValueError):
        extend_basis([0, 1, 2], vecs)
    with pytest.raises(ValueError):
        greedy_basis([BitVector(2, 1), BitVector(3, 1)])

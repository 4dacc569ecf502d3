"""k-dimensional Weisfeiler-Leman refinement with canonical colour ids.

Colour ids are assigned every round by sorting the distinct signatures
lexicographically and numbering them 0, 1, 2, ...  Because a signature is
built only from previous ids, the ids of isomorphic inputs agree tuple for
tuple under the isomorphism, which is what canonisation relies on.

Several graphs can be refined in lockstep with one shared numbering; this
is how two graphs are compared.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, GuardError, members

__all__ = [
    "MAX_WL_ENTRIES",
    "TupleColouring",
    "VertexColouring",
    "initial_colouring_k",
    "colour_refinement",
    "wl_stable_k",
    "wl_stable_jointly",
    "individualise",
    "wl_distinguishes",
    "colour_histogram",
    "partition_of",
]

# cap on n**k * n * k, the size of the substitution table built per round
MAX_WL_ENTRIES = 40_000_000


@dataclass(frozen=True, eq=False)
class TupleColouring:
    """Stable (or initial) colouring of ``V^k``; ``colours[v1, ..., vk]`` is the id."""

    k: int
    colours: np.ndarray
    rounds: int

    def colour_of(self, tup: Sequence[int]) -> int:
        if len(tup) != self.k:
            raise ValueError(f"expected a {self.k}-tuple")
        return int(self.colours[tuple(tup)])

    def diagonal(self) -> list[int]:
        n = self.colours.shape[0] if self.colours.ndim else 0
        return [int(self.colours[(v,) * self.k]) for v in range(n)]

    @property
    def num_colours(self) -> int:
        return int(self.colours.max()) + 1 if self.colours.size else 0


@dataclass(frozen=True)
class VertexColouring:
    colours: tuple[int, ...]
    rounds: int = 0

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    @property
    def num_colours(self) -> int:
        return len(set(self.colours))


def partition_of(colours: Sequence[int]) -> list[tuple[int, ...]]:
    """Colour classes as sorted tuples, ordered by least element."""
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        classes.setdefault(int(c), []).append(v)
    return sorted(tuple(vs) for vs in classes.values())


def individualise(G: Graph, tup: Sequence[int]) -> Graph:
    """Give ``tup[i-1]`` colour ``i`` (the last occurrence wins); the rest move above ``len(tup)``.

    Colours here start at 0, so an unmarked colour ``c`` is read as ``c + 1``
    before the shift by ``len(tup)``; this keeps it clear of the marks 1..len(tup).
    """
    ell = len(tup)
    colours = [c + ell + 1 for c in G.colours]
    for i, v in enumerate(tup, start=1):
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range")
        colours[v] = i
    return G.with_colours(colours)


# --------------------------------------------------------------------------
# canonical numbering helpers


def _rank_rows(rows: np.ndarray) -> np.ndarray:
    """Dense ranks of the rows of a 2-d int array in lexicographic row order."""
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if rows.shape[1] == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    order = np.lexsort(rows.T[::-1])
    srt = rows[order]
    new = np.empty(len(srt), dtype=bool)
    new[0] = True
    np.any(srt[1:] != srt[:-1], axis=1, out=new[1:])
    ids = np.empty(len(srt), dtype=np.int64)
    ids[order] = np.cumsum(new) - 1
    return ids


def _rank_signatures(sigs: list) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _check_guard(n: int, k: int) -> None:
    if n ** k * max(n, 1) * k > MAX_WL_ENTRIES:
        raise GuardError(f"{k}-WL on {n} vertices exceeds the size guard")


# --------------------------------------------------------------------------
# k = 1: colour refinement over neighbourhoods


def _refine_vertices(graphs: Sequence[Graph]) -> tuple[list[list[int]], int]:
    flat = [c for G in graphs for c in G.colours]
    ids = _rank_signatures(flat)
    cols, pos = [], 0
    for G in graphs:
        cols.append(ids[pos:pos + G.n])
        pos += G.n
    count = len(set(ids))
    rounds = 0
    nbrs = [[members(row) for row in G.adj] for G in graphs]
    while True:
        sigs = []
        for col, nb in zip(cols, nbrs):
            sigs.extend((col[v], tuple(sorted(col[w] for w in nb[v]))) for v in range(len(col)))
        ids = _rank_signatures(sigs)
        new_count = len(set(ids))
        if new_count == count:
            # refinement keeps the order of previous ids, so the numbering is unchanged
            return cols, rounds
        cols, pos = [], 0
        for G in graphs:
            cols.append(ids[pos:pos + G.n])
            pos += G.n
        count = new_count
        rounds += 1


def colour_refinement(G: Graph) -> VertexColouring:
    (cols,), rounds = _refine_vertices([G])
    return VertexColouring(tuple(cols), rounds)


# --------------------------------------------------------------------------
# k >= 2


def _initial_rows(G: Graph, k: int) -> np.ndarray:
    n = G.n
    idx = np.indices((n,) * k).reshape(k, -1).T
    colour = np.asarray(G.colours, dtype=np.int64)
    A = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        for w in members(G.adj[v]):
            A[v, w] = 1
    cols = [colour[idx[:, i]] for i in range(k)]
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    eq = [(idx[:, i] == idx[:, j]).astype(np.int64) for i, j in pairs]
    adj = [A[idx[:, i], idx[:, j]] for i, j in pairs]
    return np.stack(cols + eq + adj, axis=1)


def _split(ids: np.ndarray, graphs: Sequence[Graph], k: int) -> list[np.ndarray]:
    out, pos = [], 0
    for G in graphs:
        size = G.n ** k
        out.append(ids[pos:pos + size].reshape((G.n,) * k))
        pos += size
    return out


def _substitution_rows(chi: np.ndarray, k: int) -> np.ndarray:
    """Rows ``(chi(v[w/1]), ..., chi(v[w/k]))`` for every tuple v (outer) and w (inner)."""
    n = chi.shape[0]
    shape = (n,) * k + (n,)
    parts = []
    for i in range(k):
        t = np.expand_dims(np.moveaxis(chi, i, -1), i)
        parts.append(np.broadcast_to(t, shape).reshape(-1))
    return np.stack(parts, axis=1)


def _refine_tuples(graphs: Sequence[Graph], k: int) -> tuple[list[np.ndarray], int]:
    n = graphs[0].n
    if any(G.n != n for G in graphs):
        raise ValueError("lockstep refinement needs graphs of equal order")
    _check_guard(n, k)
    ids = _rank_rows(np.concatenate([_initial_rows(G, k) for G in graphs]))
    chis = _split(ids, graphs, k)
    count = int(ids.max()) + 1 if ids.size else 0
    rounds = 0
    while True:
        sub = np.concatenate([_substitution_rows(chi, k) for chi in chis])
        sub_ids = _rank_rows(sub).reshape(len(graphs) * n ** k, n)
        sub_ids.sort(axis=1)
        prev = np.concatenate([chi.reshape(-1) for chi in chis])
        ids = _rank_rows(np.concatenate([prev[:, None], sub_ids], axis=1))
        new_count = int(ids.max()) + 1 if ids.size else 0
        if new_count == count:
            return chis, rounds
        chis = _split(ids, graphs, k)
        count = new_count
        rounds += 1


def initial_colouring_k(G: Graph, k: int) -> TupleColouring:
    """Atomic-type colouring: colour sequence, equality pattern, adjacency pattern."""
    if k < 2:
        raise ValueError("initial_colouring_k needs k >= 2")
    _check_guard(G.n, k)
    ids = _rank_rows(_initial_rows(G, k))
    return TupleColouring(k, _frozen(ids.reshape((G.n,) * k)), 0)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def wl_stable_jointly(graphs: Sequence[Graph], k: int) -> list[TupleColouring]:
    """Refine several graphs of equal order in lockstep with shared colour ids."""
    if k < 1:
        raise ValueError("dimension must be at least 1")
    if not graphs:
        return []
    if k == 1:
        cols, rounds = _refine_vertices(graphs)
        return [TupleColouring(1, _frozen(np.asarray(c, dtype=np.int64)), rounds) for c in cols]
    chis, rounds = _refine_tuples(graphs, k)
    return [TupleColouring(k, _frozen(c), rounds) for c in chis]


def wl_stable_k(G: Graph, k: int) -> TupleColouring:
    return wl_stable_jointly([G], k)[0]


def colour_histogram(c: TupleColouring) -> list[tuple[int, int]]:
    counts = Counter(c.colours.reshape(-1).tolist())
    return sorted(counts.items())


def wl_distinguishes(G: Graph, H: Graph, k: int) -> bool:
    if G.n != H.n:
        return True
    cg, ch = wl_stable_jointly([G, H], k)
    return colour_histogram(cg) != colour_histogram(ch)

"""Test populations: all small graphs up to isomorphism, random graphs, trees.

Random draws come from counter-based Philox streams keyed by ``(seed,
label)``, so each suite sees the same numbers regardless of which other
suites ran before it.
"""

from __future__ import annotations

import zlib
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .decomposition import rank_width_exact
from .f2 import BitVector, extend_basis
from .graph import Graph, GuardError, apply_permutation, mask_of, members, vertex_set
from .splitflip import OrderedSplitPair, is_split_pair

__all__ = [
    "MAX_ENUMERATION_N",
    "stream",
    "graph_from_code",
    "all_graphs",
    "distance_hereditary_graphs",
    "all_trees",
    "tree_code",
    "random_graph",
    "random_tree",
    "random_permutation",
    "random_relabelling",
    "random_subset",
    "random_split_pair",
]

MAX_ENUMERATION_N = 6


def stream(seed: int, label: str) -> np.random.Generator:
    """Independent generator for one named use of a seed."""
    key = zlib.crc32(label.encode())
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(key,))))


def _pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_code(n: int, code: int) -> Graph:
    """Bit ``j`` of ``code`` is the ``j``-th pair of ``combinations(range(n), 2)``."""
    return Graph.from_edges(n, [e for j, e in enumerate(_pair_list(n)) if (code >> j) & 1])


@lru_cache(maxsize=None)
def _canonical_codes(n: int) -> tuple[int, ...]:
    pairs = _pair_list(n)
    m = len(pairs)
    if m == 0:
        return (0,)
    index = {e: j for j, e in enumerate(pairs)}
    codes = np.arange(1 << m, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(m)) & 1).astype(np.int64)
    weights = []
    for pi in permutations(range(n)):
        w = np.zeros(m, dtype=np.int64)
        for j, (u, v) in enumerate(pairs):
            a, b = sorted((pi[u], pi[v]))
            w[j] = 1 << index[(a, b)]
        weights.append(w)
    W = np.stack(weights, axis=1)
    best = codes.copy()
    for start in range(0, W.shape[1], 120):
        np.minimum(best, (bits @ W[:, start:start + 120]).min(axis=1), out=best)
    return tuple(int(c) for c in np.unique(best))


def all_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class (the least code over all relabellings)."""
    if not 0 <= n <= MAX_ENUMERATION_N:
        raise GuardError(f"enumeration limited to n <= {MAX_ENUMERATION_N}")
    return [graph_from_code(n, c) for c in _canonical_codes(n)]


@lru_cache(maxsize=None)
def _dh_codes(n: int) -> tuple[int, ...]:
    return tuple(
        c for c in _canonical_codes(n) if rank_width_exact(graph_from_code(n, c))[0] <= 1
    )


def distance_hereditary_graphs(n: int) -> list[Graph]:
    """Representatives with rank width at most 1 (n >= 1)."""
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise GuardError(f"enumeration limited to 1 <= n <= {MAX_ENUMERATION_N}")
    return [graph_from_code(n, c) for c in _dh_codes(n)]


# --------------------------------------------------------------------------
# trees


def tree_code(G: Graph) -> str:
    """Isomorphism invariant of a tree: least nested-parenthesis code over its centres."""
    n = G.n
    if n == 0:
        return ""
    degree = [G.degree(v) for v in range(n)]
    layer = [v for v in range(n) if degree[v] <= 1]
    left = n
    removed = set()
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            removed.add(v)
            for w in G.neighbours(v):
                if w not in removed:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centres = [v for v in range(n) if v not in removed]

    def encode(v: int, parent: int) -> str:
        return "(" + "".join(sorted(encode(w, v) for w in G.neighbours(v) if w != parent)) + ")"

    return min(encode(c, -1) for c in centres)


@lru_cache(maxsize=None)
def _tree_edges(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if n == 1:
        return ((),)
    seen: dict[str, tuple[tuple[int, int], ...]] = {}
    for edges in _tree_edges(n - 1):
        for v in range(n - 1):
            grown = edges + ((v, n - 1),)
            seen.setdefault(tree_code(Graph.from_edges(n, grown)), grown)
    return tuple(seen[c] for c in sorted(seen))


def all_trees(n: int) -> list[Graph]:
    """Every tree on n >= 1 vertices up to isomorphism, grown leaf by leaf."""
    if n < 1:
        raise ValueError("trees need at least one vertex")
    return [Graph.from_edges(n, e) for e in _tree_edges(n)]


# --------------------------------------------------------------------------
# random instances


def random_graph(rng: np.random.Generator, n: int, p: float | None = None) -> Graph:
    """G(n, p); with ``p`` unset the density itself is drawn uniformly from [0.15, 0.85]."""
    if p is None:
        p = float(rng.uniform(0.15, 0.85))
    coins = rng.random(n * (n - 1) // 2) < p
    return Graph.from_edges(n, [e for e, c in zip(_pair_list(n), coins) if c])


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    """Random recursive tree with shuffled labels."""
    edges = [(int(rng.integers(v)), v) for v in range(1, n)]
    return apply_permutation(Graph.from_edges(n, edges), random_permutation(rng, n))


def random_permutation(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    return tuple(int(x) for x in rng.permutation(n))


def random_relabelling(rng: np.random.Generator, G: Graph) -> Graph:
    return apply_permutation(G, random_permutation(rng, G.n))


def random_subset(rng: np.random.Generator, n: int, p: float = 0.5) -> tuple[int, ...]:
    return tuple(int(v) for v in np.flatnonzero(rng.random(n) < p))


def random_split_pair(rng: np.random.Generator, G: Graph, X) -> OrderedSplitPair:
    """A split pair found by scanning each side in a random order."""
    xs = vertex_set(G, X)
    x_mask = mask_of(xs)
    ys = tuple(members(G.vertex_mask & ~x_mask))

    def basis(side: tuple[int, ...], other: int) -> tuple[int, ...]:
        order = [side[i] for i in rng.permutation(len(side))]
        chosen = extend_basis([], [BitVector(G.n, G.adj[v] & other) for v in order])
        return tuple(order[i] for i in chosen)

    sp = OrderedSplitPair(basis(xs, G.vertex_mask & ~x_mask), basis(ys, x_mask), xs)
    if not is_split_pair(G, xs, sp.a, sp.b):
        raise RuntimeError("random basis scan did not produce a split pair")
    return sp

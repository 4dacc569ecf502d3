from __future__ import annotations

from itertools import combinations

import hypothesis.strategies as st
import networkx as nx
from hypothesis import settings

from rwiso.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7, colours: int = 1) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    cols = draw(st.lists(st.integers(0, colours - 1), min_size=n, max_size=n)) if colours > 1 else None
    return Graph.from_edges(n, [e for e, c in zip(pairs, chosen) if c], cols)


@st.composite
def graph_and_permutation(draw, min_n: int = 1, max_n: int = 7, colours: int = 1):
    G = draw(graphs(min_n, max_n, colours))
    pi = draw(st.permutations(list(range(G.n))))
    return G, tuple(pi)


@st.composite
def graph_and_subset(draw, min_n: int = 1, max_n: int = 8):
    G = draw(graphs(min_n, max_n))
    X = draw(st.sets(st.integers(0, G.n - 1))) if G.n else set()
    return G, tuple(sorted(X))


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    for v in range(G.n):
        H.nodes[v]["colour"] = G.colours[v]
    return H


def nx_isomorphic(G: Graph, H: Graph) -> bool:
    return nx.is_isomorphic(to_nx(G), to_nx(H), node_match=lambda a, b: a["colour"] == b["colour"])


def span_rank(rows: list[int]) -> int:
    """Rank over GF(2) by counting the distinct XOR combinations of the rows."""
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span).bit_length() - 1

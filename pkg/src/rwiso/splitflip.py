"""Split pairs, flip functions and flip extensions of a vertex cut.

For ``X`` a set of vertices, ``vec_X(v)`` is the row of ``v`` in the cut
matrix ``M(X, X̄)``.  A split pair picks vertices on each side whose rows
form a basis of that side's row space; pebbling it and refining makes the
cut visible up to a recolouring-dependent complementation ("flip").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .f2 import BitVector, compress_bits, extend_basis, greedy_basis, rank_of_rows
from .graph import Graph, connected_components, mask_of, members, vertex_set
from .wl import VertexColouring, colour_refinement, individualise

__all__ = [
    "OrderedSplitPair",
    "FlipFunction",
    "FlipExtension",
    "x_vector",
    "is_split_pair",
    "find_split_pair",
    "nice_split_pairs",
    "is_nice",
    "flip_graph",
    "find_flip_function",
    "components_flip",
    "equiv_class",
    "anchor_pattern",
    "flip_extension_graph",
    "find_flip_extension",
    "comp_flip_extension",
    "respects_cut",
]


@dataclass(frozen=True)
class OrderedSplitPair:
    a: tuple[int, ...]
    b: tuple[int, ...]
    X: tuple[int, ...]

    @property
    def tuple(self) -> tuple[int, ...]:
        return self.a + self.b


def x_vector(G: Graph, X: Iterable[int], v: int) -> BitVector:
    """Row of ``v`` in the cut matrix of ``X``, columns in sorted order of X̄."""
    xs = vertex_set(G, X)
    if v not in xs:
        raise ValueError(f"vertex {v} is not in X")
    rest = members(G.vertex_mask & ~mask_of(xs))
    return BitVector(len(rest), compress_bits(G.adj[v], rest))


def _raw_vectors(G: Graph, side_mask: int, vertices: Sequence[int]) -> list[BitVector]:
    # columns left at their vertex positions: ranks are unaffected
    rest = G.vertex_mask & ~side_mask
    return [BitVector(G.n, G.adj[v] & rest) for v in vertices]


def _side_rank(G: Graph, side_mask: int) -> int:
    rest = G.vertex_mask & ~side_mask
    return rank_of_rows(G.adj[v] & rest for v in members(side_mask))


def is_split_pair(G: Graph, X: Iterable[int], a: Sequence[int], b: Sequence[int]) -> bool:
    xs = vertex_set(G, X)
    x_mask = mask_of(xs)
    y_mask = G.vertex_mask & ~x_mask
    if any(not 0 <= v < G.n for v in (*a, *b)):
        return False
    if mask_of(a) & ~x_mask or mask_of(b) & ~y_mask:
        return False
    rho = _side_rank(G, x_mask)
    if len(a) != rho or len(b) != rho:
        return False
    return (
        rank_of_rows(G.adj[v] & y_mask for v in a) == rho
        and rank_of_rows(G.adj[v] & x_mask for v in b) == rho
    )


def _require_split_pair(G: Graph, sp: OrderedSplitPair) -> None:
    if not is_split_pair(G, sp.X, sp.a, sp.b):
        raise ValueError(f"not a split pair for X={list(sp.X)}: a={list(sp.a)} b={list(sp.b)}")


def find_split_pair(G: Graph, X: Iterable[int]) -> OrderedSplitPair:
    xs = vertex_set(G, X)
    x_mask = mask_of(xs)
    ys = members(G.vertex_mask & ~x_mask)
    a = tuple(xs[i] for i in greedy_basis(_raw_vectors(G, x_mask, xs)))
    b = tuple(ys[i] for i in greedy_basis(_raw_vectors(G, ~x_mask & G.vertex_mask, ys)))
    return OrderedSplitPair(a, b, xs)


def nice_split_pairs(
    G: Graph,
    X: Iterable[int],
    X1: Iterable[int],
    X2: Iterable[int],
    sp: OrderedSplitPair,
) -> tuple[OrderedSplitPair, OrderedSplitPair]:
    """Split pairs for the two parts of ``X = X1 ⊎ X2`` that are nice w.r.t. ``sp``.

    ``A_i`` extends ``A ∩ X_i`` to a basis on ``X_i``; ``B_i`` is a maximal
    independent subset of ``B ∪ A_{3-i}``, so ``B_i ∩ X̄ ⊆ B`` as well.
    """
    xs, x1, x2 = vertex_set(G, X), vertex_set(G, X1), vertex_set(G, X2)
    m1, m2 = mask_of(x1), mask_of(x2)
    if m1 & m2 or (m1 | m2) != mask_of(xs):
        raise ValueError("X1 and X2 do not partition X")
    if sp.X != xs:
        raise ValueError("split pair belongs to a different set")
    _require_split_pair(G, sp)

    parts = (x1, x2)
    a_parts = []
    for part in parts:
        pmask = mask_of(part)
        index = {v: j for j, v in enumerate(part)}
        seed = [index[v] for v in sp.a if v in index]
        chosen = extend_basis(seed, _raw_vectors(G, pmask, part))
        a_parts.append(tuple(part[j] for j in chosen))

    result = []
    for i, part in enumerate(parts):
        pmask = mask_of(part)
        candidates = sorted(set(sp.b) | set(a_parts[1 - i]))
        vectors = [BitVector(G.n, G.adj[v] & pmask) for v in candidates]
        b_i = tuple(candidates[j] for j in greedy_basis(vectors))
        pair = OrderedSplitPair(a_parts[i], b_i, part)
        if not is_split_pair(G, part, pair.a, pair.b):
            raise RuntimeError(f"constructed pair for X_{i + 1} is not a split pair")
        result.append(pair)
    return result[0], result[1]


def is_nice(sp: OrderedSplitPair, sp1: OrderedSplitPair, sp2: OrderedSplitPair) -> bool:
    """Both containments A ∩ X_i ⊆ A_i and B_{3-i} ∩ X_i ⊆ A_i."""
    for mine, other in ((sp1, sp2), (sp2, sp1)):
        part = set(mine.X)
        a_i = set(mine.a)
        if not (set(sp.a) & part) <= a_i or not (set(other.b) & part) <= a_i:
            return False
    return True


# --------------------------------------------------------------------------
# flip functions


@dataclass(frozen=True)
class FlipFunction:
    """Symmetric 0/1 map on pairs of colours, stored on unordered pairs."""

    values: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        clean: dict[tuple[int, int], int] = {}
        for (c, d), x in self.values.items():
            key = (c, d) if c <= d else (d, c)
            if x not in (0, 1):
                raise ValueError("flip values must be 0 or 1")
            if clean.get(key, x) != x:
                raise ValueError(f"flip function not symmetric at {key}")
            clean[key] = x
        object.__setattr__(self, "values", clean)

    def __call__(self, c: int, d: int) -> int:
        key = (c, d) if c <= d else (d, c)
        try:
            return self.values[key]
        except KeyError:
            raise ValueError(f"flip function undefined on colour pair {key}") from None

    @classmethod
    def from_ones(cls, colours: Iterable[int], ones: Iterable[tuple[int, int]] = ()) -> FlipFunction:
        cs = sorted(set(colours))
        table = {(c, d): 0 for i, c in enumerate(cs) for d in cs[i:]}
        for c, d in ones:
            table[(c, d) if c <= d else (d, c)] = 1
        return cls(table)

    @classmethod
    def constant(cls, colours: Iterable[int], value: int) -> FlipFunction:
        cs = sorted(set(colours))
        return cls({(c, d): value for i, c in enumerate(cs) for d in cs[i:]})


def _colour_list(chi: VertexColouring | Sequence[int]) -> Sequence[int]:
    return chi.colours if isinstance(chi, VertexColouring) else chi


def flip_graph(G: Graph, chi: VertexColouring | Sequence[int], f: FlipFunction) -> Graph:
    """Complement adjacency exactly on the vertex pairs whose colour pair has f = 1."""
    col = _colour_list(chi)
    if len(col) != G.n:
        raise ValueError("colouring does not match the graph")
    classes: dict[int, int] = {}
    for v, c in enumerate(col):
        classes[c] = classes.get(c, 0) | (1 << v)
    rows = []
    for v in range(G.n):
        flip = 0
        for c, cmask in classes.items():
            if f(col[v], c):
                flip |= cmask
        rows.append((G.adj[v] ^ flip) & ~(1 << v))
    return Graph(G.n, tuple(rows), G.colours)


def find_flip_function(
    G: Graph, X: Iterable[int], sp: OrderedSplitPair
) -> tuple[FlipFunction, VertexColouring]:
    """Flip every colour pair that carries an edge across the cut.

    Colours are those of colour refinement after individualising ``sp``; every
    component of the flipped graph then lies inside X or inside X̄.
    """
    xs = vertex_set(G, X)
    if sp.X != xs:
        raise ValueError("split pair belongs to a different set")
    _require_split_pair(G, sp)
    chi = colour_refinement(individualise(G, sp.tuple))
    x_mask = mask_of(xs)
    y_mask = G.vertex_mask & ~x_mask
    ones = set()
    for v in xs:
        for w in members(G.adj[v] & y_mask):
            ones.add((chi[v], chi[w]))
    return FlipFunction.from_ones(chi.colours, ones), chi


def components_flip(
    G: Graph, chi: VertexColouring | Sequence[int], f: FlipFunction
) -> list[tuple[int, ...]]:
    return connected_components(flip_graph(G, chi, f))


def respects_cut(components: Iterable[Sequence[int]], X: Iterable[int]) -> bool:
    xs = set(X)
    return all(set(C) <= xs or not (set(C) & xs) for C in components)


# --------------------------------------------------------------------------
# flip extensions


def _anchors(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(dict.fromkeys((*a, *b)))


def anchor_pattern(G: Graph, anchors: Sequence[int], v: int) -> int:
    """Bitmask over anchor positions of the anchors adjacent to ``v``."""
    row = G.adj[v]
    return mask_of(j for j, u in enumerate(anchors) if (row >> u) & 1)


def equiv_class(G: Graph, sp_tuples: tuple[Sequence[int], Sequence[int]], v: int) -> tuple[int, ...]:
    """All w with N(w) ∩ (ā ∪ b̄) = N(v) ∩ (ā ∪ b̄)."""
    anchors = mask_of(_anchors(*sp_tuples))
    target = G.adj[v] & anchors
    return tuple(w for w in range(G.n) if G.adj[w] & anchors == target)


@dataclass(frozen=True)
class FlipExtension:
    """``(ā, b̄, f)`` with ``f(M, N)`` a threshold in 1..n, absent meaning ⊥.

    ``M`` and ``N`` are bitmasks over :attr:`anchors`, the distinct vertices
    of ``ā`` followed by ``b̄`` in first-occurrence order.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    table: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        size = 1 << len(self.anchors)
        for (M, N), d in self.table.items():
            if not (0 <= M < size and 0 <= N < size):
                raise ValueError(f"pattern pair {(M, N)} outside the anchor set")
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"threshold for {(M, N)} must be a positive integer")
            if M != N and (N, M) in self.table:
                raise ValueError(f"both f{(M, N)} and f{(N, M)} are defined")

    @property
    def anchors(self) -> tuple[int, ...]:
        return _anchors(self.a, self.b)

    def pattern_set(self, M: int) -> tuple[int, ...]:
        return tuple(u for j, u in enumerate(self.anchors) if (M >> j) & 1)


def _edge_decision(has_edge: bool, count: int, d: int) -> bool:
    return count < d if has_edge else count >= d


def flip_extension_graph(G: Graph, s: FlipExtension) -> Graph:
    anchors = s.anchors
    if any(not 0 <= u < G.n for u in anchors):
        raise ValueError("anchor vertex out of range")
    if any(d > G.n for d in s.table.values()):
        raise ValueError("threshold exceeds the vertex count")
    pattern = [anchor_pattern(G, anchors, v) for v in range(G.n)]
    cls: dict[int, int] = {}
    for v, M in enumerate(pattern):
        cls[M] = cls.get(M, 0) | (1 << v)

    rows = [0] * G.n
    for v in range(G.n):
        for w in range(v + 1, G.n):
            M, N = pattern[v], pattern[w]
            e = G.has_edge(v, w)
            if M == N:
                d = s.table.get((M, M))
                if d is None:
                    continue
                keep_v = _edge_decision(e, (G.adj[v] & cls[M]).bit_count(), d)
                keep_w = _edge_decision(e, (G.adj[w] & cls[M]).bit_count(), d)
                if keep_v != keep_w:
                    raise ValueError(f"threshold f({M},{M}) decides the pair {v},{w} asymmetrically")
                new = keep_v
            else:
                d = s.table.get((M, N))
                if d is not None:
                    new = _edge_decision(e, (G.adj[v] & cls[N]).bit_count(), d)
                else:
                    d = s.table.get((N, M))
                    if d is None:
                        continue
                    new = _edge_decision(e, (G.adj[w] & cls[M]).bit_count(), d)
            if new:
                rows[v] |= 1 << w
                rows[w] |= 1 << v
    return Graph(G.n, tuple(rows), G.colours)


def find_flip_extension(G: Graph, X: Iterable[int], sp: OrderedSplitPair) -> FlipExtension:
    """Thresholds per pattern pair so that no edge of G^s crosses the cut.

    For patterns ``M, N`` let ``P, P̄`` be the ``M``-class inside and outside
    ``X`` and ``Q, Q̄`` likewise for ``N``.  No crossing edges gives ``n``,
    all crossing pairs adjacent gives ``1``; otherwise one side of the
    class counts strictly separates and its minimum becomes the threshold.
    """
    xs = vertex_set(G, X)
    if sp.X != xs:
        raise ValueError("split pair belongs to a different set")
    _require_split_pair(G, sp)
    n = G.n
    anchors = _anchors(sp.a, sp.b)
    x_mask = mask_of(xs)
    y_mask = G.vertex_mask & ~x_mask
    cls: dict[int, int] = {}
    for v in range(n):
        M = anchor_pattern(G, anchors, v)
        cls[M] = cls.get(M, 0) | (1 << v)

    def edges_between(S: int, T: int) -> tuple[bool, bool]:
        """(some edge, all pairs adjacent) for S × T."""
        some, every = False, True
        for v in members(S):
            hit = G.adj[v] & T
            some = some or bool(hit)
            every = every and hit == T
        return some, every

    def count(v: int, mask: int) -> int:
        return (G.adj[v] & mask).bit_count()

    table: dict[tuple[int, int], int] = {}
    patterns = sorted(cls)
    for i, M in enumerate(patterns):
        for N in patterns[i:]:
            P, Pb = cls[M] & x_mask, cls[M] & y_mask
            Q, Qb = cls[N] & x_mask, cls[N] & y_mask
            some1, all1 = edges_between(P, Qb)
            some2, all2 = edges_between(Q, Pb)
            if not some1 and not some2:
                table[(M, N)] = n
                continue
            if all1 and all2:
                table[(M, N)] = 1
                continue
            # orient so that Q × P̄ carries the edges
            if not some2:
                M, N = N, M
                P, Pb, Q, Qb = Q, Qb, P, Pb
                (some1, all1), (some2, all2) = (some2, all2), (some1, all1)
            if M == N or not all2 or some1:
                raise ValueError(f"cut structure inconsistent at pattern pair ({M},{N}); is sp a split pair?")
            cM, cN = cls[M], cls[N]
            max_p = max(count(v, cN) for v in members(P))
            min_pb = min(count(w, cN) for w in members(Pb))
            min_q = min(count(v, cM) for v in members(Q))
            max_qb = max(count(w, cM) for w in members(Qb))
            if max_p < min_pb:
                table[(M, N)] = min_pb
            elif min_q > max_qb:
                table[(N, M)] = min_q
            else:
                raise ValueError(f"no separating threshold at pattern pair ({M},{N})")
    return FlipExtension(sp.a, sp.b, table)


def comp_flip_extension(G: Graph, s: FlipExtension, v: int) -> tuple[int, ...]:
    for C in connected_components(flip_extension_graph(G, s)):
        if v in C:
            return C
    raise ValueError(f"vertex {v} out of range")

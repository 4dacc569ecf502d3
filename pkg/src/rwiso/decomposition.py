"""Rank decompositions, their width, and exact rank width by subset DP."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .f2 import cut_rank_mask
from .graph import Graph, GuardError, ParseError, members

__all__ = [
    "MAX_RANK_WIDTH_N",
    "RankDecomposition",
    "validate_decomposition",
    "decomposition_width",
    "rank_width_exact",
    "CutRankCache",
    "parse_decomposition",
    "format_decomposition",
    "caterpillar",
]

MAX_RANK_WIDTH_N = 16

Nested = Union[int, tuple["Nested", "Nested"]]


@dataclass(frozen=True)
class RankDecomposition:
    """Rooted binary tree on nodes ``0..len(children)-1`` plus a leaf labelling.

    ``children[t]`` is ``None`` for a leaf and a pair of node ids otherwise.
    The tree shape is checked on construction; whether ``leaf_map`` is a
    bijection onto the vertices of a given graph is checked by
    :func:`validate_decomposition`.
    """

    children: tuple[tuple[int, int] | None, ...]
    leaf_map: Mapping[int, int]
    root: int = 0

    def __post_init__(self) -> None:
        m = len(self.children)
        if not 0 <= self.root < m:
            raise ValueError("root is not a node")
        parent_count = [0] * m
        for t, ch in enumerate(self.children):
            if ch is None:
                continue
            if len(ch) != 2 or ch[0] == ch[1]:
                raise ValueError(f"internal node {t} needs two distinct children")
            for s in ch:
                if not 0 <= s < m:
                    raise ValueError(f"child {s} of node {t} is not a node")
                parent_count[s] += 1
        if parent_count[self.root] or any(c != 1 for t, c in enumerate(parent_count) if t != self.root):
            raise ValueError("node set is not a rooted tree")
        # every node reachable from the root, so no detached cycles
        seen, stack = set(), [self.root]
        while stack:
            t = stack.pop()
            seen.add(t)
            if self.children[t] is not None:
                stack.extend(self.children[t])
        if len(seen) != m:
            raise ValueError("node set is not a rooted tree")

    def leaves(self) -> list[int]:
        return [t for t, ch in enumerate(self.children) if ch is None]

    def gamma(self) -> dict[int, int]:
        """Vertex bitmask of every node; leaves missing from ``leaf_map`` contribute nothing."""
        out: dict[int, int] = {}
        order, stack = [], [self.root]
        while stack:
            t = stack.pop()
            order.append(t)
            if self.children[t] is not None:
                stack.extend(self.children[t])
        for t in reversed(order):
            ch = self.children[t]
            if ch is None:
                v = self.leaf_map.get(t)
                out[t] = 1 << v if v is not None and v >= 0 else 0
            else:
                out[t] = out[ch[0]] | out[ch[1]]
        return out

    @classmethod
    def from_nested(cls, nested: Nested) -> RankDecomposition:
        children: list[tuple[int, int] | None] = []
        leaf_map: dict[int, int] = {}

        def build(node: Nested) -> int:
            t = len(children)
            children.append(None)
            if isinstance(node, int):
                leaf_map[t] = node
            else:
                left, right = node
                children[t] = (build(left), build(right))
            return t

        build(nested)
        return cls(tuple(children), leaf_map)

    def to_nested(self) -> Nested:
        def walk(t: int) -> Nested:
            ch = self.children[t]
            if ch is None:
                return self.leaf_map[t]
            return (walk(ch[0]), walk(ch[1]))

        return walk(self.root)


def validate_decomposition(G: Graph, D: RankDecomposition) -> bool:
    leaves = D.leaves()
    if len(leaves) != G.n:
        return False
    images = []
    for t in leaves:
        v = D.leaf_map.get(t)
        if v is None or not 0 <= v < G.n:
            return False
        images.append(v)
    if len(set(images)) != G.n:
        return False
    # with a bijective leaf map, R.1-R.3 hold for gamma = union of leaf images below t
    gamma = D.gamma()
    if gamma[D.root] != G.vertex_mask:
        return False
    for t, ch in enumerate(D.children):
        if ch is None:
            if gamma[t].bit_count() != 1:
                return False
        elif gamma[ch[0]] & gamma[ch[1]] or gamma[ch[0]] | gamma[ch[1]] != gamma[t]:
            return False
    return True


class CutRankCache:
    """Memoised cut rank per vertex bitmask."""

    def __init__(self, G: Graph) -> None:
        self.G = G
        self._memo: dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        r = self._memo.get(mask)
        if r is None:
            r = self._memo[mask] = cut_rank_mask(self.G, mask)
        return r


def decomposition_width(G: Graph, D: RankDecomposition, cache: CutRankCache | None = None) -> int:
    if not validate_decomposition(G, D):
        raise ValueError("invalid rank decomposition")
    rho = cache or CutRankCache(G)
    return max(rho(mask) for mask in D.gamma().values())


def _smaller_side_key(s1: int, s2: int) -> list[int]:
    a, b = members(s1), members(s2)
    if len(a) != len(b):
        return a if len(a) < len(b) else b
    return min(a, b)


def rank_width_exact(G: Graph) -> tuple[int, RankDecomposition]:
    """Rank width and a witness decomposition via DP over all vertex subsets.

    W({v}) = rho({v}); W(S) = max(rho(S), min over S = S1 + S2 of max(W(S1), W(S2))).
    Costs 3^n, so n is capped at ``MAX_RANK_WIDTH_N``.
    """
    n = G.n
    if n > MAX_RANK_WIDTH_N:
        raise GuardError(f"rank_width_exact is limited to n <= {MAX_RANK_WIDTH_N}, got {n}")
    if n == 0:
        raise ValueError("the empty graph has no rank decomposition")
    rho = CutRankCache(G)
    full = G.vertex_mask
    width = [0] * (full + 1)
    split = [0] * (full + 1)
    for S in range(1, full + 1):
        low = S & -S
        if S == low:
            width[S] = rho(S)
            continue
        best, best_s1, best_key = None, 0, None
        rest = S ^ low
        # submasks containing the lowest vertex enumerate each bipartition once
        sub = (rest - 1) & rest
        while True:
            s1 = sub | low
            s2 = S ^ s1
            value = max(width[s1], width[s2])
            if best is None or value < best:
                best, best_s1, best_key = value, s1, None
            elif value == best:
                if best_key is None:
                    best_key = _smaller_side_key(best_s1, S ^ best_s1)
                key = _smaller_side_key(s1, s2)
                if key < best_key:
                    best_s1, best_key = s1, key
            if sub == 0:
                break
            sub = (sub - 1) & rest
        width[S] = max(rho(S), best)
        split[S] = best_s1

    def build(S: int) -> Nested:
        if S & (S - 1) == 0:
            return S.bit_length() - 1
        s1 = split[S]
        s2 = S ^ s1
        first, second = (s1, s2) if members(s1) == _smaller_side_key(s1, s2) else (s2, s1)
        return (build(first), build(second))

    return width[full], RankDecomposition.from_nested(build(full))


def caterpillar(order: list[int]) -> RankDecomposition:
    """Linear decomposition that peels ``order`` one vertex at a time."""
    if not order:
        raise ValueError("need at least one vertex")
    node: Nested = order[-1]
    for v in reversed(order[:-1]):
        node = (v, node)
    return RankDecomposition.from_nested(node)


# --------------------------------------------------------------------------
# "((0 1) (2 3))" serialisation


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_decomposition(text: str) -> RankDecomposition:
    tokens = _tokenize(text)
    pos = 0

    def read() -> Nested:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of decomposition")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while pos < len(tokens) and tokens[pos] != ")":
                items.append(read())
            if pos >= len(tokens):
                raise ParseError("unbalanced parentheses in decomposition")
            pos += 1
            if len(items) != 2:
                raise ParseError(f"internal node must have two children, got {len(items)}")
            return (items[0], items[1])
        if tok == ")":
            raise ParseError("unexpected ')' in decomposition")
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"bad leaf {tok!r} in decomposition") from None
        if v < 0:
            raise ParseError(f"negative leaf {v} in decomposition")
        return v

    nested = read()
    if pos != len(tokens):
        raise ParseError("trailing tokens after decomposition")
    return RankDecomposition.from_nested(nested)


def format_decomposition(D: RankDecomposition) -> str:
    def fmt(node: Nested) -> str:
        if isinstance(node, int):
            return str(node)
        return f"({fmt(node[0])} {fmt(node[1])})"

    return fmt(D.to_nested())


def gamma_sets(D: RankDecomposition) -> dict[int, tuple[int, ...]]:
    return {t: tuple(members(mask)) for t, mask in D.gamma().items()}


"""Vertex-coloured simple graphs, text formats, and brute-force oracles.

Vertices are the integers ``0..n-1``.  Adjacency is kept as one Python int
per vertex whose bit ``w`` is set iff ``vw`` is an edge, so neighbourhood
intersections and cut matrices are plain bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "ParseError",
    "GuardError",
    "parse_graph",
    "parse_edge_list",
    "parse_graph6",
    "to_edge_list",
    "to_graph6",
    "vertex_set",
    "induced_subgraph",
    "apply_permutation",
    "is_isomorphism",
    "brute_force_isomorphic",
    "automorphism_orbits",
    "connected_components",
    "complement",
    "disjoint_union",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "empty_graph",
    "star_graph",
    "petersen_graph",
]


class ParseError(ValueError):
    """Malformed graph, expression or decomposition text."""


class GuardError(ValueError):
    """Input exceeds a size guard of an exponential-time routine."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    colours: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.colours:
            object.__setattr__(self, "colours", (0,) * self.n)
        if len(self.adj) != self.n or len(self.colours) != self.n:
            raise ValueError("adjacency and colour lists must have length n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            w = row
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at {v},{u}")
                w ^= low
        if any(c < 0 for c in self.colours):
            raise ValueError("colours must be nonnegative")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], colours: Sequence[int] | None = None
    ) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u} {v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(colours) if colours is not None else ())

    def has_edge(self, v: int, w: int) -> bool:
        return bool((self.adj[v] >> w) & 1)

    def neighbours(self, v: int) -> list[int]:
        return [w for w in range(self.n) if (self.adj[v] >> w) & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.n) for w in range(v + 1, self.n) if (self.adj[v] >> w) & 1]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def is_coloured(self) -> bool:
        return any(self.colours)

    def with_colours(self, colours: Sequence[int]) -> Graph:
        return Graph(self.n, self.adj, tuple(colours))


def vertex_set(G: Graph, X: Iterable[int]) -> tuple[int, ...]:
    """Validate ``X`` against ``G`` and return it sorted without duplicates."""
    members = sorted(set(X))
    for v in members:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    return tuple(members)


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# --------------------------------------------------------------------------
# Text formats


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    return lines


def _is_graph6_token(token: str) -> bool:
    if token.startswith(">>graph6<<"):
        token = token[len(">>graph6<<"):]
    return bool(token) and all(63 <= ord(ch) <= 126 for ch in token)


def parse_graph(text: str) -> Graph:
    """Parse an edge list or a graph6 string, detected from the content."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input")
    if len(lines) == 1 and len(lines[0][1].split()) == 1 and _is_graph6_token(lines[0][1]):
        return parse_graph6(lines[0][1])
    return parse_edge_list(text)


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    parts = header.split()
    try:
        if len(parts) != 2:
            raise ValueError
        n, m = int(parts[0]), int(parts[1])
        if n < 0 or m < 0:
            raise ValueError
    except ValueError:
        raise ParseError(f"line {lineno}: malformed header {header!r}, expected 'n m'") from None

    body = lines[1:]
    colours: list[int] | None = None
    if body and body[0][1].split()[0] == "colours":
        lineno, line = body[0]
        tokens = line.split()[1:]
        if len(tokens) != n:
            raise ParseError(f"line {lineno}: expected {n} colours, got {len(tokens)}")
        try:
            colours = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"line {lineno}: colours must be integers") from None
        if any(c < 0 for c in colours):
            raise ParseError(f"line {lineno}: colours must be nonnegative")
        body = body[1:]

    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise ParseError(f"line {where}: header announces {m} edges, found {len(body)}")
    rows = [0] * n
    for lineno, line in body:
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed edge {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex index out of range in {line!r} (n={n})")
        if u == v:
            raise ParseError(f"line {lineno}: loop edge {line!r}")
        if (rows[u] >> v) & 1:
            raise ParseError(f"line {lineno}: duplicate edge {line!r}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), tuple(colours) if colours is not None else ())


def to_edge_list(G: Graph) -> str:
    out = [f"{G.n} {G.m}"]
    if G.is_coloured():
        out.append("colours " + " ".join(map(str, G.colours)))
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def _decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("graph6: truncated size field")
        n = 0
        for byte in data[2:8]:
            n = (n << 6) | (byte - 63)
        return n, 8
    if len(data) < 4:
        raise ParseError("graph6: truncated size field")
    n = 0
    for byte in data[1:4]:
        n = (n << 6) | (byte - 63)
    return n, 4


def parse_graph6(token: str) -> Graph:
    token = token.strip()
    if token.startswith(">>graph6<<"):
        token = token[len(">>graph6<<"):]
    data = token.encode("ascii", errors="replace")
    if not data or any(not 63 <= b <= 126 for b in data):
        raise ParseError(f"line 1: not a graph6 string: {token!r}")
    n, offset = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[offset:]
    if len(payload) != need:
        raise ParseError(f"line 1: graph6 body has {len(payload)} bytes, expected {need} for n={n}")
    bits = []
    for byte in payload:
        value = byte - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    if any(bits[nbits:]):
        raise ParseError("line 1: graph6 padding bits must be zero")
    return Graph(n, tuple(rows))


def to_graph6(G: Graph) -> str:
    if G.is_coloured():
        raise ValueError("graph6 encodes uncoloured graphs only")
    n = G.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [int(G.has_edge(i, j)) for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        body.append(value + 63)
    return bytes(head + body).decode("ascii")


# --------------------------------------------------------------------------
# Structural operations


def induced_subgraph(G: Graph, A: Iterable[int]) -> Graph:
    verts = vertex_set(G, A)
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for w in members(G.adj[v]):
            if w in index:
                row |= 1 << index[w]
        rows.append(row)
    return Graph(len(verts), tuple(rows), tuple(G.colours[v] for v in verts))


def _check_permutation(pi: Sequence[int], n: int) -> None:
    if len(pi) != n or sorted(pi) != list(range(n)):
        raise ValueError(f"not a bijection on [{n}]: {list(pi)}")


def apply_permutation(G: Graph, pi: Sequence[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed to ``pi[v]``."""
    _check_permutation(pi, G.n)
    rows = [0] * G.n
    colours = [0] * G.n
    for v in range(G.n):
        rows[pi[v]] = mask_of(pi[w] for w in members(G.adj[v]))
        colours[pi[v]] = G.colours[v]
    return Graph(G.n, tuple(rows), tuple(colours))


def is_isomorphism(G: Graph, H: Graph, phi: Sequence[int]) -> bool:
    if G.n != H.n:
        return False
    _check_permutation(phi, G.n)
    for v in range(G.n):
        if G.colours[v] != H.colours[phi[v]]:
            return False
        if mask_of(phi[w] for w in members(G.adj[v])) != H.adj[phi[v]]:
            return False
    return True


def _backtrack(G: Graph, H: Graph, fixed: dict[int, int]) -> tuple[int, ...] | None:
    n = G.n
    key_g = [(G.colours[v], G.degree(v)) for v in range(n)]
    key_h = [(H.colours[w], H.degree(w)) for w in range(n)]
    if sorted(key_g) != sorted(key_h):
        return None
    candidates = [[w for w in range(n) if key_h[w] == key_g[v]] for v in range(n)]
    for v, w in fixed.items():
        if key_g[v] != key_h[w]:
            return None
        candidates[v] = [w]
    phi = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in candidates[v]:
            if used[w]:
                continue
            if any(G.has_edge(v, u) != H.has_edge(w, phi[u]) for u in range(v)):
                continue
            phi[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
        phi[v] = -1
        return False

    return tuple(phi) if extend(0) else None


def brute_force_isomorphic(G: Graph, H: Graph) -> tuple[int, ...] | None:
    """First colour- and edge-preserving bijection in lexicographic order, or None.

    Plain backtracking over vertices in index order, pruned only by
    (colour, degree) classes.  Meant as an oracle for n up to about 10.
    """
    if G.n != H.n:
        return None
    return _backtrack(G, H, {})


def automorphism_orbits(G: Graph) -> list[tuple[int, ...]]:
    """Orbits of Aut(G) on vertices, by brute force."""
    orbit_of = [-1] * G.n
    orbits: list[list[int]] = []
    for v in range(G.n):
        if orbit_of[v] >= 0:
            continue
        orbit_of[v] = len(orbits)
        orbit = [v]
        for w in range(v + 1, G.n):
            if orbit_of[w] < 0 and _backtrack(G, G, {v: w}) is not None:
                orbit_of[w] = orbit_of[v]
                orbit.append(w)
        orbits.append(orbit)
    return [tuple(o) for o in orbits]


def connected_components(G: Graph) -> list[tuple[int, ...]]:
    seen = 0
    comps = []
    for v in range(G.n):
        if (seen >> v) & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in members(frontier):
                nxt |= G.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(tuple(members(comp)))
    return comps


def complement(G: Graph) -> Graph:
    full = G.vertex_mask
    return Graph(G.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.adj)), G.colours)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    rows = list(G.adj) + [row << G.n for row in H.adj]
    return Graph(G.n + H.n, tuple(rows), G.colours + H.colours)


# --------------------------------------------------------------------------
# Named families


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)

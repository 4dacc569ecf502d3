"""Exact solver for the bijective k-pebble game.

A position is the set of pebbled pairs ``(v, w)`` with ``v`` in G and ``w``
in H, encoded as a bitmask over pair indices ``v * n + w``.  Tuple order
and repeated pebbles do not affect the winning condition, so sets suffice.

Duplicator's winning region is a greatest fixpoint.  Start with every
position that is a partial isomorphism and delete positions until stable:

* a position dies if some sub-position (Spoiler lifts a pebble) is dead;
* a position with fewer than ``k`` pairs dies if Duplicator has no
  bijection all of whose extensions are alive, i.e. the bipartite graph of
  live extensions has no perfect matching.

Duplicator wins iff the empty position survives.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .graph import Graph, GuardError
from .wl import wl_distinguishes

__all__ = [
    "MAX_PEBBLE_N",
    "MAX_PEBBLES",
    "GamePosition",
    "GameVerdict",
    "position_is_immediate_loss",
    "spoiler_wins",
    "verify_theorem_wl_game",
    "perfect_matching",
]

MAX_PEBBLE_N = 8
# WL dimension 3 needs a game with 4 pebbles
MAX_PEBBLES = 4

Winner = Literal["Spoiler", "Duplicator"]


@dataclass(frozen=True)
class GamePosition:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(sorted(set(self.pairs))))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> GamePosition:
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class GameVerdict:
    winner: Winner
    # lost position -> ("remove", pair) or ("pebble", vertices of G Spoiler may pick from)
    strategy: dict[GamePosition, tuple] = field(default_factory=dict, compare=False)

    @property
    def spoiler(self) -> bool:
        return self.winner == "Spoiler"


def position_is_immediate_loss(G: Graph, H: Graph, p: GamePosition) -> bool:
    """True iff the pebbled pairs do not form a colour-, equality- and edge-preserving map."""
    pairs = p.pairs
    for v, w in pairs:
        if not (0 <= v < G.n and 0 <= w < H.n):
            raise ValueError(f"pair {(v, w)} out of range")
        if G.colours[v] != H.colours[w]:
            return True
    for i, (v1, w1) in enumerate(pairs):
        for v2, w2 in pairs[i + 1:]:
            if (v1 == v2) != (w1 == w2):
                return True
            if G.has_edge(v1, v2) != H.has_edge(w1, w2):
                return True
    return False


def perfect_matching(n: int, allowed) -> list[int] | None:
    """Kuhn's augmenting paths; ``allowed(v)`` lists the right vertices for left ``v``.

    Returns ``match[v]`` for every left vertex, or None if no perfect matching exists.
    """
    match_right = [-1] * n
    options = [list(allowed(v)) for v in range(n)]

    def augment(v: int, seen: list[bool]) -> bool:
        for w in options[v]:
            if seen[w]:
                continue
            seen[w] = True
            if match_right[w] < 0 or augment(match_right[w], seen):
                match_right[w] = v
                return True
        return False

    for v in range(n):
        if not augment(v, [False] * n):
            return None
    match_left = [0] * n
    for w, v in enumerate(match_right):
        match_left[v] = w
    return match_left


def _hall_violator(n: int, allowed) -> list[int]:
    """Left vertices whose joint neighbourhood is too small (assumes no perfect matching)."""
    options = [list(allowed(v)) for v in range(n)]
    match_right = [-1] * n
    match_left = [-1] * n

    def augment(v: int, seen: list[bool]) -> bool:
        for w in options[v]:
            if not seen[w]:
                seen[w] = True
                if match_right[w] < 0 or augment(match_right[w], seen):
                    match_right[w], match_left[v] = v, w
                    return True
        return False

    for v in range(n):
        augment(v, [False] * n)
    free = next(v for v in range(n) if match_left[v] < 0)
    left, queue = {free}, deque([free])
    while queue:
        v = queue.popleft()
        for w in options[v]:
            u = match_right[w]
            if u >= 0 and u not in left:
                left.add(u)
                queue.append(u)
    return sorted(left)


def _live_positions(G: Graph, H: Graph, k: int) -> set[int]:
    """All partial isomorphisms with at most k pairs, as pair bitmasks."""
    n = G.n
    good = [
        (v, w)
        for v in range(n)
        for w in range(n)
        if G.colours[v] == H.colours[w]
    ]
    out = {0}

    def compatible(chosen: list[tuple[int, int]], v: int, w: int) -> bool:
        for v2, w2 in chosen:
            if (v == v2) != (w == w2) or G.has_edge(v, v2) != H.has_edge(w, w2):
                return False
        return True

    def grow(start: int, chosen: list[tuple[int, int]], mask: int) -> None:
        if len(chosen) == k:
            return
        for idx in range(start, len(good)):
            v, w = good[idx]
            if compatible(chosen, v, w):
                m = mask | 1 << (v * n + w)
                out.add(m)
                chosen.append((v, w))
                grow(idx + 1, chosen, m)
                chosen.pop()

    grow(0, [], 0)
    return out


def _decode(mask: int, n: int) -> GamePosition:
    pairs = []
    while mask:
        low = mask & -mask
        idx = low.bit_length() - 1
        pairs.append(divmod(idx, n))
        mask ^= low
    return GamePosition(tuple(pairs))


def spoiler_wins(G: Graph, H: Graph, k: int, digest: bool = False) -> GameVerdict:
    """Winner of the bijective k-pebble game on (G, H) from the empty position."""
    if k < 1:
        raise ValueError("need at least one pebble pair")
    if G.n != H.n:
        return GameVerdict("Spoiler")
    n = G.n
    if n > MAX_PEBBLE_N or k > MAX_PEBBLES:
        raise GuardError(f"pebble game limited to n <= {MAX_PEBBLE_N} and k <= {MAX_PEBBLES}")
    alive = _live_positions(G, H, k)
    reasons: dict[int, tuple] = {}
    queue = deque(p for p in alive if p.bit_count() < k)
    queued = set(queue)
    bits = [1 << i for i in range(n * n)]

    def options(p: int):
        return lambda v: [w for w in range(n) if (p | bits[v * n + w]) in alive]

    def kill(p: int, reason: tuple) -> None:
        stack = [(p, reason)]
        while stack:
            q, why = stack.pop()
            if q not in alive:
                continue
            alive.discard(q)
            if digest:
                reasons[q] = why
            if q.bit_count() < k:
                for i in range(n * n):
                    sup = q | bits[i]
                    if sup != q and sup in alive:
                        stack.append((sup, ("remove", divmod(i, n))))
            rest = q
            while rest:
                low = rest & -rest
                rest ^= low
                sub = q ^ low
                if sub in alive and sub not in queued:
                    queue.append(sub)
                    queued.add(sub)

    while queue:
        p = queue.popleft()
        queued.discard(p)
        if p not in alive:
            continue
        if perfect_matching(n, options(p)) is None:
            why = ("pebble", tuple(_hall_violator(n, options(p)))) if digest else ()
            kill(p, why)

    winner: Winner = "Duplicator" if 0 in alive else "Spoiler"
    strategy = {_decode(p, n): why for p, why in reasons.items()} if digest else {}
    return GameVerdict(winner, strategy)


def verify_theorem_wl_game(G: Graph, H: Graph, k: int) -> bool:
    """Check that k-WL distinguishes G and H exactly when Spoiler wins with k+1 pebbles."""
    if G.n > MAX_PEBBLE_N or H.n > MAX_PEBBLE_N or not 1 <= k <= MAX_PEBBLES - 1:
        raise GuardError(f"check limited to n <= {MAX_PEBBLE_N} and 1 <= k <= {MAX_PEBBLES - 1}")
    return wl_distinguishes(G, H, k) == spoiler_wins(G, H, k + 1).spoiler

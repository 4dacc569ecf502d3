"""Linear algebra over GF(2) on bit-packed rows.

A row is a Python int whose bit ``j`` is column ``j``; ints are arbitrary
width, so a row is a packed word sequence with zero padding for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, mask_of, members, vertex_set

__all__ = [
    "BitVector",
    "BitMatrix",
    "compress_bits",
    "cut_matrix",
    "rank_f2",
    "rank_of_rows",
    "cut_rank",
    "cut_rank_mask",
    "greedy_basis",
    "extend_basis",
]


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the vector length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        return cls(len(values), mask_of(j for j, x in enumerate(values) if x))

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        if any(r < 0 or r >> self.cols for r in self.data):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> BitMatrix:
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(BitVector.from_list(r).bits for r in rows))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])


def compress_bits(mask: int, columns: Sequence[int]) -> int:
    """Gather the bits of ``mask`` at positions ``columns`` into 0..len-1."""
    out = 0
    for j, c in enumerate(columns):
        if (mask >> c) & 1:
            out |= 1 << j
    return out


def cut_matrix(G: Graph, X: Iterable[int]) -> BitMatrix:
    xs = vertex_set(G, X)
    rest = members(G.vertex_mask & ~mask_of(xs))
    return BitMatrix(len(xs), len(rest), tuple(compress_bits(G.adj[x], rest) for x in xs))


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of packed rows by forward elimination against a pivot table."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                break
            row ^= pivot
    return len(pivots)


def rank_f2(M: BitMatrix) -> int:
    return rank_of_rows(M.data)


def cut_rank_mask(G: Graph, mask: int) -> int:
    """Cut rank of the vertex set given as a bitmask; columns stay uncompressed."""
    rest = G.vertex_mask & ~mask
    return rank_of_rows(G.adj[v] & rest for v in members(mask))


def cut_rank(G: Graph, X: Iterable[int]) -> int:
    return cut_rank_mask(G, mask_of(vertex_set(G, X)))


def _lengths(vectors: Sequence[BitVector]) -> None:
    if vectors and len({v.length for v in vectors}) != 1:
        raise ValueError("vectors have different lengths")


def _reduce(row: int, pivots: dict[int, int]) -> int:
    while row:
        pivot = pivots.get(row.bit_length() - 1)
        if pivot is None:
            return row
        row ^= pivot
    return 0


def greedy_basis(vectors: Sequence[BitVector]) -> list[int]:
    """Indices of the first-fit maximal independent subset, in scan order."""
    return extend_basis([], vectors)


def extend_basis(seed: Sequence[int], vectors: Sequence[BitVector]) -> list[int]:
    """Extend the independent ``seed`` to a basis of the span, first-fit.

    The result lists the seed indices first (in the given order) followed by
    the added indices in scan order.
    """
    _lengths(vectors)
    pivots: dict[int, int] = {}
    chosen: list[int] = []
    for i in seed:
        row = _reduce(vectors[i].bits, pivots)
        if not row:
            raise ValueError(f"seed is not linearly independent (index {i})")
        pivots[row.bit_length() - 1] = row
        chosen.append(i)
    taken = set(chosen)
    for i, vec in enumerate(vectors):
        if i in taken:
            continue
        row = _reduce(vec.bits, pivots)
        if row:
            pivots[row.bit_length() - 1] = row
            chosen.append(i)
    return chosen

"""k-expressions (clique-width terms) as s-expressions.

Syntax::

    (v i)              a single vertex labelled i
    (eta i j E)        join every i-labelled vertex to every j-labelled one, i != j
    (rho i j E)        relabel i to j
    (u E1 E2 ...)      disjoint union, left operand numbered first

Labels are positive integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph, ParseError

__all__ = [
    "Leaf",
    "AddEdges",
    "Relabel",
    "Union_",
    "CliqueExpression",
    "parse_expression",
    "format_expression",
    "evaluate_expression",
    "complete_graph_expression",
    "path_expression",
    "cycle_expression",
    "EXPRESSION_FIXTURES",
]


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class AddEdges:
    i: int
    j: int
    child: Node


@dataclass(frozen=True)
class Relabel:
    src: int
    dst: int
    child: Node


@dataclass(frozen=True)
class Union_:
    left: Node
    right: Node


Node = Union[Leaf, AddEdges, Relabel, Union_]


@dataclass(frozen=True)
class CliqueExpression:
    root: Node
    label_count: int


def _labels(node: Node) -> set[int]:
    out: set[int] = set()
    stack = [node]
    while stack:
        x = stack.pop()
        if isinstance(x, Leaf):
            out.add(x.label)
        elif isinstance(x, AddEdges):
            out.update((x.i, x.j))
            stack.append(x.child)
        elif isinstance(x, Relabel):
            out.update((x.src, x.dst))
            stack.append(x.child)
        else:
            stack.extend((x.left, x.right))
    return out


def parse_expression(text: str) -> CliqueExpression:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def label(tok: str) -> int:
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"expected a label, got {tok!r}") from None
        if value < 1:
            raise ParseError(f"labels start at 1, got {value}")
        return value

    def read() -> Node:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ParseError("expected '('" if pos < len(tokens) else "unexpected end of expression")
        pos += 1
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        op = tokens[pos]
        pos += 1
        if op == "v":
            node: Node = Leaf(label(_take()))
        elif op in ("eta", "rho"):
            i, j = label(_take()), label(_take())
            child = read()
            if op == "eta":
                if i == j:
                    raise ParseError(f"eta needs two different labels, got {i} {i}")
                node = AddEdges(i, j, child)
            else:
                node = Relabel(i, j, child)
        elif op == "u":
            parts = []
            while pos < len(tokens) and tokens[pos] == "(":
                parts.append(read())
            if len(parts) < 2:
                raise ParseError("u needs at least two operands")
            node = parts[0]
            for part in parts[1:]:
                node = Union_(node, part)
        else:
            raise ParseError(f"unknown operator {op!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError(f"expected ')' after {op} term")
        pos += 1
        return node

    def _take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        return tok

    root = read()
    if pos != len(tokens):
        raise ParseError("trailing tokens after expression")
    return CliqueExpression(root, max(_labels(root)))


def format_expression(e: CliqueExpression | Node) -> str:
    node = e.root if isinstance(e, CliqueExpression) else e
    if isinstance(node, Leaf):
        return f"(v {node.label})"
    if isinstance(node, AddEdges):
        return f"(eta {node.i} {node.j} {format_expression(node.child)})"
    if isinstance(node, Relabel):
        return f"(rho {node.src} {node.dst} {format_expression(node.child)})"
    return f"(u {format_expression(node.left)} {format_expression(node.right)})"


def evaluate_expression(e: CliqueExpression) -> tuple[Graph, tuple[int, ...]]:
    """Build the labelled graph bottom-up; returns the graph and vertex labels."""

    def ev(node: Node) -> tuple[list[int], list[int]]:
        if isinstance(node, Leaf):
            return [0], [node.label]
        if isinstance(node, Union_):
            adj_l, lab_l = ev(node.left)
            adj_r, lab_r = ev(node.right)
            shift = len(lab_l)
            return adj_l + [row << shift for row in adj_r], lab_l + lab_r
        adj, lab = ev(node.child)
        if isinstance(node, Relabel):
            return adj, [node.dst if x == node.src else x for x in lab]
        mask_i = sum(1 << v for v, x in enumerate(lab) if x == node.i)
        mask_j = sum(1 << v for v, x in enumerate(lab) if x == node.j)
        for v, x in enumerate(lab):
            if x == node.i:
                adj[v] |= mask_j
            elif x == node.j:
                adj[v] |= mask_i
        return adj, lab

    adj, lab = ev(e.root)
    return Graph(len(lab), tuple(adj)), tuple(lab)


# --------------------------------------------------------------------------
# standard witnesses


def complete_graph_expression(n: int) -> str:
    """Two labels: add a fresh 2-vertex, join it to all 1-vertices, relabel to 1."""
    text = "(v 1)"
    for _ in range(n - 1):
        text = f"(rho 2 1 (eta 1 2 (u {text} (v 2))))"
    return text


def path_expression(n: int) -> str:
    """Three labels: 1 = finished, 2 = current end, 3 = new end."""
    text = "(v 2)"
    for _ in range(n - 1):
        text = f"(rho 3 2 (rho 2 1 (eta 2 3 (u {text} (v 3)))))"
    return text


def cycle_expression(n: int) -> str:
    """Four labels: the first vertex keeps label 4 and closes the cycle at the end."""
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    text = "(v 4)"
    # second vertex is the running end
    text = f"(eta 4 2 (u {text} (v 2)))"
    for _ in range(n - 2):
        text = f"(rho 3 2 (rho 2 1 (eta 2 3 (u {text} (v 3)))))"
    return f"(eta 2 4 {text})"


EXPRESSION_FIXTURES: tuple[str, ...] = (
    "(v 1)",
    "(eta 1 2 (u (v 1) (v 2)))",
    complete_graph_expression(3),
    complete_graph_expression(5),
    complete_graph_expression(7),
    "(eta 1 2 (u (u (v 1) (v 1)) (u (v 2) (u (v 2) (v 2)))))",
    "(u (v 1) (u (v 1) (v 1)))",
    path_expression(4),
    path_expression(6),
    path_expression(8),
    cycle_expression(5),
    cycle_expression(6),
    cycle_expression(7),
    # threshold graph: alternate isolated and dominating additions
    "(rho 2 1 (eta 1 2 (u (u (rho 2 1 (eta 1 2 (u (v 1) (v 2)))) (v 1)) (v 2))))",
    # cograph: complement of a perfect matching on 6 vertices
    "(rho 2 1 (eta 1 2 (u (rho 2 1 (eta 1 2 (u (u (v 1) (v 1)) (u (v 2) (v 2))))) (u (v 2) (v 2)))))",
    # house: triangle 0-1-2 on top of the square 1-3-4-2
    "(eta 3 2 (eta 4 2 (u (rho 2 1 (eta 2 4 (u (eta 1 2 (eta 1 3 (eta 2 3 (u (v 1) (u (v 2) (v 3)))))) (v 4)))) (v 2))))",
)

"""Self-test suites: each checks one claim against oracles on a fixed population.

Every suite takes a seed, draws from its own named random stream, and
returns a :class:`SuiteResult` with one :class:`Check` per property.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np

from .canon import canonical_graph, canonical_string, canonise, orbit_partition, iso_test
from .corpus import (
    all_graphs,
    all_trees,
    distance_hereditary_graphs,
    random_graph,
    random_permutation,
    random_relabelling,
    random_split_pair,
    random_subset,
    stream,
)
from .decomposition import rank_width_exact
from .expressions import EXPRESSION_FIXTURES, evaluate_expression, parse_expression
from .graph import (
    Graph,
    apply_permutation,
    automorphism_orbits,
    brute_force_isomorphic,
    complete_graph,
    connected_components,
)
from .pebble import verify_theorem_wl_game
from .splitflip import (
    components_flip,
    find_flip_extension,
    find_flip_function,
    flip_extension_graph,
    is_nice,
    is_split_pair,
    nice_split_pairs,
    respects_cut,
)
from .wl import wl_distinguishes, wl_stable_k

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "suite_names"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


@dataclass
class SuiteResult:
    suite: str
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    budget: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds <= self.budget

    @property
    def passed(self) -> bool:
        return self.within_budget and all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            out.append(f"  [{flag}] {c.name}: {c.detail} ({c.seconds:.1f}s)")
        limit = f" <= {self.budget:.0f}s" if self.budget is not None else ""
        flag = "PASS" if self.passed else "FAIL"
        head = f"[{flag}] {self.suite}: {self.title} ({self.seconds:.1f}s{limit})"
        return [head] + out


class _Timer:
    def __enter__(self) -> _Timer:
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = time.perf_counter() - self.start


def _check(name: str, failures: int, total: int, what: str, seconds: float, extra: str = "") -> Check:
    detail = f"{total} {what}, {failures} failures" + (f"; {extra}" if extra else "")
    return Check(name, failures == 0, detail, seconds)


# --------------------------------------------------------------------------
# suites


def suite_iso_oracle(seed: int) -> list[Check]:
    """Canonisation-based isomorphism test against backtracking on n = 5."""
    rng = stream(seed, "iso-oracle")
    with _Timer() as t:
        graphs: list[tuple[Graph, bool]] = []
        for G in all_graphs(5):
            low_width = rank_width_exact(G)[0] <= 1
            graphs.append((G, low_width))
            graphs.extend((random_relabelling(rng, G), low_width) for _ in range(5))
        compared = failures = 0
        for (G, g_ok), (H, h_ok) in combinations(graphs, 2):
            if not (g_ok and h_ok):
                continue
            compared += 1
            if iso_test(G, H, 2) != (brute_force_isomorphic(G, H) is not None):
                failures += 1
    return [_check("iso_test(k=2) vs brute force", failures, compared, "pairs", t.seconds)]


def _degree_sequence(G: Graph) -> tuple[int, ...]:
    return tuple(sorted(G.degree(v) for v in range(G.n)))


def smoke_pairs(count: int = 3) -> list[tuple[Graph, Graph]]:
    """Rank width <= 1 graphs on 5 vertices paired with a non-isomorphic graph of equal degree sequence."""
    out = []
    dh = set(distance_hereditary_graphs(5))
    for G, H in combinations(all_graphs(5), 2):
        if G in dh and _degree_sequence(G) == _degree_sequence(H):
            out.append((G, H))
            if len(out) == count:
                break
    return out


def suite_identify(seed: int) -> list[Check]:
    """2-WL separates every rank width <= 1 graph from all other graphs of its order."""
    with _Timer() as t:
        compared = failures = 0
        for n in range(1, 7):
            others = all_graphs(n)
            for G in distance_hereditary_graphs(n):
                for H in others:
                    if H == G:
                        continue
                    compared += 1
                    if not wl_distinguishes(G, H, 2):
                        failures += 1
    checks = [_check("2-WL identifies rw<=1, n<=6", failures, compared, "pairs", t.seconds)]
    with _Timer() as t:
        pairs = smoke_pairs()
        failures = sum(not wl_distinguishes(G, H, 7) for G, H in pairs)
    checks.append(_check("7-WL smoke on equal-degree pairs, n=5", failures, len(pairs), "pairs", t.seconds))
    return checks


def _equal_degree_pairs(graphs: list[Graph]) -> list[tuple[Graph, Graph]]:
    return [(G, H) for G, H in combinations(graphs, 2) if _degree_sequence(G) == _degree_sequence(H)]


def suite_wl_game(seed: int) -> list[Check]:
    """k-WL equivalence versus the bijective (k+1)-pebble game."""
    with _Timer() as t:
        compared = failures = 0
        for n in range(1, 6):
            for G, H in combinations_with_replacement(all_graphs(n), 2):
                for k in (1, 2):
                    compared += 1
                    failures += not verify_theorem_wl_game(G, H, k)
    checks = [_check("exhaustive n<=5, k in {1,2}", failures, compared, "games", t.seconds)]

    rng = stream(seed, "wl-game")
    with _Timer() as t:
        six = all_graphs(6)
        hard = _equal_degree_pairs(six)
        compared = failures = 0
        for i in range(200):
            # half the samples share a degree sequence, where 1-WL needs more rounds
            if i % 2:
                G, H = hard[int(rng.integers(len(hard)))]
            else:
                G, H = six[int(rng.integers(len(six)))], six[int(rng.integers(len(six)))]
            H = random_relabelling(rng, H)
            for k in (1, 2):
                compared += 1
                failures += not verify_theorem_wl_game(G, H, k)
    checks.append(_check("sampled n=6 pairs, k in {1,2}", failures, compared, "games", t.seconds))
    return checks


def canon_corpus(seed: int, size: int = 300) -> list[Graph]:
    corpus = [G for n in range(1, 7) for G in distance_hereditary_graphs(n)]
    rng = stream(seed, "canon-corpus")
    while len(corpus) < size:
        corpus.append(random_graph(rng, int(rng.integers(4, 8))))
    return corpus


def suite_canon(seed: int) -> list[Check]:
    """kappa(G) is isomorphic to G and invariant under relabelling."""
    rng = stream(seed, "canon")
    with _Timer() as t:
        corpus = canon_corpus(seed)
        iso_fail = inv_fail = 0
        for G in corpus:
            form = canonise(G, 2)
            if brute_force_isomorphic(G, canonical_graph(form)) is None:
                iso_fail += 1
            want = canonical_string(form)
            for _ in range(30):
                if canonical_string(canonise(random_relabelling(rng, G), 2)) != want:
                    inv_fail += 1
    return [
        _check("kappa(G) isomorphic to G", iso_fail, len(corpus), "graphs", t.seconds),
        _check("kappa(G) = kappa(pi G)", inv_fail, 30 * len(corpus), "relabellings", t.seconds),
    ]


def suite_wl_monotone(seed: int) -> list[Check]:
    """Distinguishing is monotone in k; stable colour ids commute with relabelling."""
    rng = stream(seed, "wl-monotone")
    with _Timer() as t:
        failures = 0
        for _ in range(500):
            n = int(rng.integers(2, 7))
            G = random_graph(rng, n)
            # same order and edge count so that low dimensions are sometimes fooled
            H = _random_graph_with_edges(rng, n, G.m)
            seen = [wl_distinguishes(G, H, k) for k in (1, 2, 3)]
            failures += (seen[0] and not seen[1]) + (seen[1] and not seen[2])
    checks = [_check("k distinguishes => k+1 distinguishes", failures, 500, "pairs", t.seconds)]
    with _Timer() as t:
        failures = 0
        for _ in range(200):
            n = int(rng.integers(1, 7))
            G = random_graph(rng, n)
            pi = random_permutation(rng, n)
            H = apply_permutation(G, pi)
            index = np.asarray(pi)
            for k in (1, 2, 3):
                cg, ch = wl_stable_k(G, k), wl_stable_k(H, k)
                if not np.array_equal(ch.colours[np.ix_(*([index] * k))], cg.colours):
                    failures += 1
    checks.append(_check("chi(pi G)(pi v) = chi(G)(v), k<=3", failures, 200, "samples", t.seconds))
    return checks


def _random_graph_with_edges(rng: np.random.Generator, n: int, m: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    pick = rng.choice(len(pairs), size=m, replace=False) if m else []
    return Graph.from_edges(n, [pairs[int(i)] for i in pick])


def suite_flip(seed: int) -> list[Check]:
    """Flip functions and flip extensions built from split pairs respect the cut."""
    rng = stream(seed, "flip")
    with _Timer() as t:
        fail_f = fail_s = 0
        for _ in range(200):
            n = int(rng.integers(1, 10))
            G = random_graph(rng, n)
            X = random_subset(rng, n)
            sp = random_split_pair(rng, G, X)
            f, chi = find_flip_function(G, X, sp)
            fail_f += not respects_cut(components_flip(G, chi, f), X)
            s = find_flip_extension(G, X, sp)
            fail_s += not respects_cut(connected_components(flip_extension_graph(G, s)), X)
    return [
        _check("flip function components", fail_f, 200, "instances", t.seconds),
        _check("flip extension components", fail_s, 200, "instances", t.seconds),
    ]


def suite_nice_pairs(seed: int) -> list[Check]:
    """Constructed split pairs of X1, X2 are nice and keep B_i outside X inside B."""
    rng = stream(seed, "nice-pairs")
    with _Timer() as t:
        failures = 0
        for _ in range(50):
            n = int(rng.integers(2, 9))
            G = random_graph(rng, n)
            X = random_subset(rng, n, 0.7)
            side = rng.random(len(X)) < 0.5
            X1 = tuple(v for v, s in zip(X, side) if s)
            X2 = tuple(v for v, s in zip(X, side) if not s)
            sp = random_split_pair(rng, G, X)
            p1, p2 = nice_split_pairs(G, X, X1, X2, sp)
            outside = set(range(n)) - set(X)
            ok = (
                is_split_pair(G, X1, p1.a, p1.b)
                and is_split_pair(G, X2, p2.a, p2.b)
                and is_nice(sp, p1, p2)
                and all(set(p.b) & outside <= set(sp.b) for p in (p1, p2))
            )
            failures += not ok
    return [_check("nice split pairs", failures, 50, "instances", t.seconds)]


def suite_widths(seed: int) -> list[Check]:
    """Exact rank widths of cliques, trees and expression fixtures."""
    checks = []
    with _Timer() as t:
        bad = [n for n in range(2, 9) if rank_width_exact(complete_graph(n))[0] != 1]
    checks.append(_check("rw(K_n) = 1, 2<=n<=8", len(bad), 7, "cliques", t.seconds))
    with _Timer() as t:
        trees = [T for n in range(1, 9) for T in all_trees(n)]
        bad = [T for T in trees if rank_width_exact(T)[0] > 2]
    checks.append(_check("rw(tree) <= 2, n<=8", len(bad), len(trees), "trees", t.seconds))
    with _Timer() as t:
        bad = []
        for text in EXPRESSION_FIXTURES:
            e = parse_expression(text)
            G, _ = evaluate_expression(e)
            if rank_width_exact(G)[0] > e.label_count:
                bad.append(text)
    checks.append(_check("rw(eval e) <= labels(e)", len(bad), len(EXPRESSION_FIXTURES), "expressions", t.seconds))
    return checks


def suite_orbits(seed: int) -> list[Check]:
    """Diagonal 3-WL colours give the automorphism orbits of rank width <= 1 graphs."""
    with _Timer() as t:
        graphs = [G for n in range(1, 7) for G in distance_hereditary_graphs(n)]
        failures = sum(orbit_partition(G, 2) != automorphism_orbits(G) for G in graphs)
    return [_check("orbit_partition(G, 2) = Aut orbits", failures, len(graphs), "graphs", t.seconds)]


# name -> (criterion number, title, runner, time budget in seconds)
SUITES: dict[str, tuple[int, str, Callable[[int], list[Check]], float | None]] = {
    "iso-oracle": (1, "isomorphism test agrees with the oracle", suite_iso_oracle, 60),
    "identify": (2, "low-dimensional WL identifies rank width <= 1", suite_identify, 600),
    "wl-game": (3, "WL equivalence matches the pebble game", suite_wl_game, 600),
    "canon": (4, "canonisation contract", suite_canon, 300),
    "wl-monotone": (5, "WL monotonicity and id invariance", suite_wl_monotone, None),
    "flip": (6, "flip constructions respect the cut", suite_flip, 120),
    "nice-pairs": (7, "nice split pairs", suite_nice_pairs, None),
    "widths": (8, "rank width facts", suite_widths, 120),
    "orbits": (9, "orbit determination", suite_orbits, None),
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    number, title, runner, budget = SUITES[name]
    with _Timer() as t:
        checks = runner(seed)
    return SuiteResult(f"{number} {name}", title, checks, t.seconds, budget)

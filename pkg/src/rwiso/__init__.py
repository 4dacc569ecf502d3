"""Weisfeiler-Leman isomorphism testing and canonisation for graphs of bounded rank width."""

from .canon import CanonicalForm, canonical_string, canonise, iso_test, orbit_partition
from .decomposition import RankDecomposition, decomposition_width, rank_width_exact
from .f2 import BitMatrix, BitVector, cut_rank, rank_f2
from .graph import (
    Graph,
    GuardError,
    ParseError,
    apply_permutation,
    brute_force_isomorphic,
    parse_graph,
    to_edge_list,
)
from .pebble import GameVerdict, spoiler_wins, verify_theorem_wl_game
from .splitflip import (
    FlipExtension,
    FlipFunction,
    OrderedSplitPair,
    find_flip_extension,
    find_flip_function,
    find_split_pair,
    nice_split_pairs,
)
from .wl import colour_refinement, individualise, wl_distinguishes, wl_stable_k

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CanonicalForm",
    "FlipExtension",
    "FlipFunction",
    "GameVerdict",
    "Graph",
    "GuardError",
    "OrderedSplitPair",
    "ParseError",
    "RankDecomposition",
    "apply_permutation",
    "brute_force_isomorphic",
    "canonical_string",
    "canonise",
    "colour_refinement",
    "cut_rank",
    "decomposition_width",
    "find_flip_extension",
    "find_flip_function",
    "find_split_pair",
    "individualise",
    "iso_test",
    "nice_split_pairs",
    "orbit_partition",
    "parse_graph",
    "rank_f2",
    "rank_width_exact",
    "spoiler_wins",
    "to_edge_list",
    "verify_theorem_wl_game",
    "wl_distinguishes",
    "wl_stable_k",
]

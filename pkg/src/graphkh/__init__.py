"""Khovanov homology over GF(2), Kauffman bracket and Jones polynomial of graph-links."""

__version__ = "0.1.0"

from .complex import ChainComplex, build_complex, verify_d_squared
from .gf2 import BitMatrix, corank, rank
from .glformat import parse, serialize
from .graph import LabeledGraph, MoveKind, MoveNotApplicable, MoveSpec, apply_move, enumerate_moves, is_graph_knot, writhe
from .homology import BettiTable, betti_table, khovanov_homology, normalized_table
from .polynomials import LaurentPoly, jones, kauffman_bracket

__all__ = [
    "BettiTable", "BitMatrix", "ChainComplex", "LabeledGraph", "LaurentPoly", "MoveKind",
    "MoveNotApplicable", "MoveSpec", "apply_move", "betti_table", "build_complex", "corank",
    "enumerate_moves", "is_graph_knot", "jones", "kauffman_bracket", "khovanov_homology",
    "normalized_table", "parse", "rank", "serialize", "verify_d_squared", "writhe",
]

"""Exact combinatorics and freeness tests for hyperplane arrangements over the rationals."""
from .decone import decone, trace_arrangement
from .freeness import (find_saito_basis, is_free_rank3, locally_free_codim3,
                       theorem_check, ziegler_gap)
from .lattice import Arrangement, Hyperplane, betti, build_poset, charpoly
from .multi import MultiArrangement, rank2_exponents, sigma, ziegler_restrict

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "Hyperplane", "MultiArrangement", "betti", "build_poset",
    "charpoly", "decone", "trace_arrangement", "ziegler_restrict", "sigma",
    "rank2_exponents", "find_saito_basis", "is_free_rank3",
    "locally_free_codim3", "theorem_check", "ziegler_gap",
]

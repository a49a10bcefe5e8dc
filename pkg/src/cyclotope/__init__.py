"""Exact checks on the cyclopermutohedron: its face complex, a perfect discrete
Morse function on it, integer homology, and its (zero) virtual volume."""

from .complex import CellComplex, build_cp, build_permutohedron, order_complex
from .homology import ChainComplex, HomologySummary, IntMatrix, homology_of, predicted_betti, smith_normal_form, theorem2_ranks
from .morse import Matching, build_matching, classify_critical, morse_boundary, pair_of
from .partitions import CyclicLabel, canonicalize, enumerate_labels, refines, vertex_to_permutation

__version__ = "0.1.0"

__all__ = [
    "CellComplex",
    "ChainComplex",
    "CyclicLabel",
    "HomologySummary",
    "IntMatrix",
    "Matching",
    "build_cp",
    "build_matching",
    "build_permutohedron",
    "canonicalize",
    "classify_critical",
    "enumerate_labels",
    "homology_of",
    "morse_boundary",
    "order_complex",
    "pair_of",
    "predicted_betti",
    "refines",
    "smith_normal_form",
    "theorem2_ranks",
    "vertex_to_permutation",
]

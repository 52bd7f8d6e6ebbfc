"""Decomposition polynomials of the level-1 Fock space.

Closed formulas for the coefficients attached to same-residue node moves,
computed from sign sequences and well-nested latticed paths, together with
an independent canonical-basis oracle and the verification sweeps that tie
the two together.
"""

from .laurent import LaurentPolynomial, exact_divide, quantum_factorial, quantum_integer
from .partitions import Partition, parse_partition, format_partition
from .signseq import SignSequence, match_pairs, onto, bijective
from .latticepath import LatticedPath, latticed_paths, well_nested_collections
from .fockspace import apply_f, canonical_basis, oracle_coefficient, is_e_regular
from .closedform import (
    MoveSpec,
    branching_coefficient,
    decomposition_polynomial,
    detect_move,
    sign_sequence_of,
)
from .bijection import build_bijection, left_elements, norm_multisets_match, right_elements

__all__ = [
    "LaurentPolynomial",
    "LatticedPath",
    "MoveSpec",
    "Partition",
    "SignSequence",
    "apply_f",
    "bijective",
    "branching_coefficient",
    "build_bijection",
    "canonical_basis",
    "decomposition_polynomial",
    "detect_move",
    "exact_divide",
    "format_partition",
    "is_e_regular",
    "latticed_paths",
    "left_elements",
    "match_pairs",
    "norm_multisets_match",
    "onto",
    "oracle_coefficient",
    "parse_partition",
    "quantum_factorial",
    "quantum_integer",
    "right_elements",
    "sign_sequence_of",
    "well_nested_collections",
]

__version__ = "0.1.0"

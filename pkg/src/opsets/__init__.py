"""Nonlocal sets of orthogonal product states in C^m ⊗ C^n.

Constructs the families, certifies that no party can open with a nontrivial
orthogonality-preserving measurement, and compares sets by their
orthogonality graphs.
"""

from .families import Family, FamilyError, complete_with_grid, count_formula, generate, is_complete_basis
from .graph import OrthoGraph, build_graph, check_isomorphic, edge_counts, to_dot
from .nonlocality import (
    NonlocalityReport,
    Party,
    PartyAnalysis,
    Verdict,
    analyze_party,
    assemble_constraints,
    certify_nonlocal,
    nullspace_basis,
    witness_to_povm,
)
from .exact import exact_rank_oracle
from .states import ProductState, Side, StateSet, inner_product, load_json, orthogonality_side, save_json, validate_set

__all__ = [
    "Family",
    "FamilyError",
    "NonlocalityReport",
    "OrthoGraph",
    "Party",
    "PartyAnalysis",
    "ProductState",
    "Side",
    "StateSet",
    "Verdict",
    "analyze_party",
    "assemble_constraints",
    "build_graph",
    "certify_nonlocal",
    "check_isomorphic",
    "complete_with_grid",
    "count_formula",
    "edge_counts",
    "exact_rank_oracle",
    "generate",
    "inner_product",
    "is_complete_basis",
    "load_json",
    "nullspace_basis",
    "orthogonality_side",
    "save_json",
    "to_dot",
    "validate_set",
    "witness_to_povm",
]

"""Exact lattice-polytope invariants and the classification of normalized volume at most four."""

from .catalog import (CatalogEntry, feasible_delta, half_sum_invariant, make_simplex, make_table2,
                      make_table3, spans_lattice, strip_pyramids)
from .classify import ClassificationError, ClassificationResult, WitnessChain, classify
from .ehrhart import DeltaVector, count_points, delta_from_counts
from .enumeration import cross_validate, enumerate_groups, enumerate_simplices
from .equivalence import EquivalenceWitness, SearchBudgetExceeded, are_equivalent
from .groups import LambdaGroup, canonical_form, delta_from_group, lambda_group_of_simplex
from .polytope import LatticePolytope, UnimodularMap, apply_map, normalized_volume, pyramid
from .verify import Report, run_suite

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry", "ClassificationError", "ClassificationResult", "DeltaVector", "EquivalenceWitness",
    "LambdaGroup", "LatticePolytope", "Report", "SearchBudgetExceeded", "UnimodularMap", "WitnessChain",
    "apply_map", "are_equivalent", "canonical_form", "classify", "count_points", "cross_validate",
    "delta_from_counts", "delta_from_group", "enumerate_groups", "enumerate_simplices", "feasible_delta",
    "half_sum_invariant", "lambda_group_of_simplex", "make_simplex", "make_table2", "make_table3",
    "normalized_volume", "pyramid", "run_suite", "spans_lattice", "strip_pyramids",
]

"""Finite Coxeter groups: minimal generator multiplicities in w_0 and Cartan checks."""
from .cartan import (
    FeasibilityReport,
    candidate_violation,
    cartan_feasibility,
    explicit_cartan,
    verify_cartan,
)
from .groups import (
    TYPES,
    CoxeterElement,
    CoxeterSystem,
    cartan_matrix,
    coxeter_matrix,
    coxeter_system,
    longest_element,
    min_multiplicity,
    min_multiplicity_vector,
    normalize_type,
    parabolic_quotient,
    reference_vector,
)
from .oracle import group_order, min_multiplicity_dp_oracle
from .quadratic import PHI, SQRT2, SQRT3, QuadraticNumber, bond_product, bond_root

__all__ = [
    "TYPES", "CoxeterElement", "CoxeterSystem", "FeasibilityReport", "PHI", "QuadraticNumber",
    "SQRT2", "SQRT3", "bond_product", "bond_root", "candidate_violation", "cartan_feasibility",
    "cartan_matrix", "coxeter_matrix", "coxeter_system", "group_order", "longest_element",
    "min_multiplicity", "min_multiplicity_dp_oracle", "min_multiplicity_vector", "normalize_type",
    "explicit_cartan", "parabolic_quotient", "reference_vector", "verify_cartan",
]

"""Error constants and accuracy-probability laws for Lagrange P_k elements."""

from ._core import (
    AdmissibilityError,
    basis_json,
    basis_nodes,
    convergence_study,
    h_star,
    h_star_sequence,
    point_bound_check,
    prob_law,
    script_c_k,
    seminorm_bound_check,
    weak_star_test,
)

__all__ = [
    "AdmissibilityError",
    "basis_json",
    "basis_nodes",
    "convergence_study",
    "h_star",
    "h_star_sequence",
    "point_bound_check",
    "prob_law",
    "script_c_k",
    "seminorm_bound_check",
    "weak_star_test",
]

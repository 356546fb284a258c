"""Deterministic safety and perception checks with human-readable verbalization."""

from .checks import (
    HazardMatrix,
    HazardRule,
    UnknownObject,
    Verdict,
    check_placement,
    check_trajectory,
    default_matrix,
    load_matrix,
    obstruction_check,
    sort_assignment,
    truncate_50,
    verbalize,
)

__all__ = [
    "HazardMatrix",
    "HazardRule",
    "UnknownObject",
    "Verdict",
    "check_placement",
    "check_trajectory",
    "default_matrix",
    "load_matrix",
    "obstruction_check",
    "sort_assignment",
    "truncate_50",
    "verbalize",
]

"""Constrained dual Bernstein bases: tables, degree reduction, root clipping."""

from ._core import (
    bernstein_to_jacobi,
    cij,
    degree_elevate,
    degree_reduce,
    dual_eval,
    dual_table,
    evaluate,
    jacobi_to_bernstein,
    rational_approx,
    roots,
    squared_l2_distance,
)

__all__ = [
    "bernstein_to_jacobi",
    "cij",
    "degree_elevate",
    "degree_reduce",
    "dual_eval",
    "dual_table",
    "evaluate",
    "jacobi_to_bernstein",
    "rational_approx",
    "roots",
    "squared_l2_distance",
]

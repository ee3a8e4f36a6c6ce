"""Exact polynomial, algebraic-number and piecewise-polynomial arithmetic."""

from .algebraic import AlgebraicNumber, isolate_roots, rational_between, sign_at
from .piecewise import PiecewisePoly, common_refinement, dump, max_abs_at_most, pp_equal, pp_join, pp_meet
from .poly import Poly, count_roots, format_poly, gcd, poly_add, poly_mul, poly_scale, squarefree, sturm_sequence
from .symbolic import LabelError, eval_pointwise, eval_symbolic

__all__ = [
    "AlgebraicNumber", "LabelError", "PiecewisePoly", "Poly",
    "common_refinement", "count_roots", "dump", "eval_pointwise", "eval_symbolic",
    "format_poly", "gcd", "isolate_roots", "max_abs_at_most", "poly_add", "poly_mul",
    "poly_scale", "pp_equal", "pp_join", "pp_meet", "rational_between", "sign_at",
    "squarefree", "sturm_sequence",
]

"""Exact scalar, polynomial, and rational-function arithmetic over Q(i)."""

from .gaussian import GaussRational
from .polynomial import MultiPoly, poly_gcd, poly_lcm
from .rational import ParamRatio, ratfunc_normalize, compose_rational
from .linalg import kernel_basis, matrix_rank, solve_linear, in_span, same_span, det

__all__ = [
    "GaussRational", "MultiPoly", "poly_gcd", "poly_lcm",
    "ParamRatio", "ratfunc_normalize", "compose_rational",
    "kernel_basis", "matrix_rank", "solve_linear", "in_span", "same_span", "det",
]

"""Exact arithmetic over Q, Q[x] and Q(x), and dense exact linear algebra."""

from fractions import Fraction as BigRational

from .linalg import (charpoly, charpoly_coeffs, det, minpoly, nullspace, poly_of_matrix, rank,
                     rref, solve_unique)
from .matrix import Matrix, QMatrix, RfMatrix, identity, kron, to_rf_matrix, zeros
from .poly import (ONE, ZERO, UniPoly, integer_roots, poly_gcd, poly_lcm, poly_xgcd,
                   rational_roots, squarefree_decomposition, squarefree_part)
from .ratfunc import ONE_RF, ZERO_RF, RatFunc, ratfunc_arith, ratfunc_derivative, rf_sum

__all__ = [
    "BigRational", "UniPoly", "RatFunc", "Matrix", "QMatrix", "RfMatrix",
    "ONE", "ZERO", "ONE_RF", "ZERO_RF",
    "ratfunc_arith", "ratfunc_derivative", "rf_sum",
    "poly_gcd", "poly_lcm", "poly_xgcd", "squarefree_decomposition", "squarefree_part",
    "integer_roots", "rational_roots",
    "nullspace", "rank", "rref", "det", "charpoly", "charpoly_coeffs", "minpoly",
    "poly_of_matrix", "solve_unique", "identity", "zeros", "kron", "to_rf_matrix",
]

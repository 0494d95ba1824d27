"""Induced linear systems whose rational solutions are the homogeneous
polynomial symmetries of degree m.

Coefficient layout: a degree-m field ``Y = sum_j (sum_i c[j*N + i] mu_i) d/dy_j``
where ``mu_i`` runs over ``monomial_index(n, m)``.  With this layout

    dc/dx = A_m c,   A_m = A (x) Id_N + Id_n (x) sym_power_matrix(-A^T, m)

holds exactly when ``bracket_with_X(A, Y) == 0``.
"""

from dataclasses import dataclass
from math import comb

from .errors import DimensionMismatch, NonSquareMatrix
from .exactcore import ZERO_RF, Matrix, RatFunc
from .vfields import MvPoly, VerticalField, monomials


@dataclass(frozen=True)
class MonomialIndex:
    n: int
    m: int
    exponents: tuple

    @property
    def N(self):
        return len(self.exponents)

    def position(self, exp):
        return self._positions()[tuple(exp)]

    def _positions(self):
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {e: i for i, e in enumerate(self.exponents)}
            object.__setattr__(self, "_pos", cache)
        return cache


def monomial_index(n, m):
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    exps = tuple(monomials(n, m))
    assert len(exps) == comb(n + m - 1, m)
    return MonomialIndex(n, m, exps)


def sym_power_matrix(M, m, index=None):
    """Matrix of the derivation induced on degree-m monomials by M.

    Column k of M is the image of y_k (so the m = 1 case returns M).  The
    derivation sends y^alpha to sum_k alpha_k y^(alpha - e_k) (sum_l M[l, k] y_l).
    """
    if not M.is_square():
        raise NonSquareMatrix(f"sym power of {M.shape} matrix")
    n = M.rows
    index = index or monomial_index(n, m)
    N = index.N
    zero = M.entries[0] * 0
    out = [[zero] * N for _ in range(N)]
    for col, alpha in enumerate(index.exponents):
        for k in range(n):
            ak = alpha[k]
            if not ak:
                continue
            for l in range(n):
                v = M[l, k]
                if not v:
                    continue
                beta = list(alpha)
                beta[k] -= 1
                beta[l] += 1
                row = index.position(beta)
                out[row][col] = out[row][col] + v * ak
    return Matrix.from_rows(out)


@dataclass(frozen=True)
class LieVessiotMatrix:
    A_m: Matrix
    index: MonomialIndex
    source: object
    degree: int

    @property
    def size(self):
        return self.A_m.rows


def _system_matrix(A):
    return A.A if hasattr(A, "A") else A


def build_lv_matrix(A, m):
    """The nN x nN matrix A_m of the degree-m Lie-Vessiot system."""
    M = _system_matrix(A)
    if not M.is_square():
        raise NonSquareMatrix(f"system matrix is {M.shape}")
    n = M.rows
    index = monomial_index(n, m)
    N = index.N
    dual = M.transpose().map(lambda e: -e)
    S = sym_power_matrix(dual, m, index)
    size = n * N
    entries = [ZERO_RF] * (size * size)
    for j in range(n):
        for k in range(n):
            a = M[j, k]
            if a:
                for i in range(N):
                    entries[(j * N + i) * size + k * N + i] = a
        base = j * N
        for r in range(N):
            for c in range(N):
                s = S[r, c]
                if s:
                    pos = (base + r) * size + base + c
                    entries[pos] = entries[pos] + s
    return LieVessiotMatrix(Matrix(size, size, entries), index, A, m)


def coeffs_to_field(c, index):
    n, N = index.n, index.N
    if len(c) != n * N:
        raise DimensionMismatch(f"{len(c)} coefficients for n*N = {n * N}")
    comps = []
    for j in range(n):
        terms = {}
        for i, exp in enumerate(index.exponents):
            v = c[j * N + i]
            if v:
                terms[exp] = v
        comps.append(MvPoly(n, terms))
    return VerticalField(comps)


def field_to_coeffs(Y, index):
    if Y.n != index.n:
        raise DimensionMismatch(f"field on C^{Y.n} with index for n = {index.n}")
    if not Y.is_homogeneous(index.m):
        raise ValueError(f"field is not homogeneous of degree {index.m}")
    out = []
    for j in range(index.n):
        terms = Y.components[j].terms
        out.extend(terms.get(exp, ZERO_RF) for exp in index.exponents)
    return out


def lv_residual(lv, c):
    """dc/dx - A_m c, as a list of rational functions."""
    c = [e if isinstance(e, RatFunc) else RatFunc.const(e) for e in c]
    Ac = lv.A_m.apply(c)
    return [ci.derivative() - ai for ci, ai in zip(c, Ac)]

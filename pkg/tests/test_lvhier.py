import random
from math import comb

import pytest

from helpers import bracket_oracle, rand_ratfunc, random_field, random_system
from symgal.errors import DimensionMismatch, NonSquareMatrix
from symgal.exactcore import Matrix, QMatrix, RatFunc, UniPoly, poly_lcm
from symgal.lvhier import (build_lv_matrix, coeffs_to_field, field_to_coeffs, lv_residual,
                           monomial_index, sym_power_matrix)
from symgal.vfields import MvPoly, VerticalField, bracket_with_X

X = RatFunc.x()


@pytest.mark.parametrize("n,m,expected", [
    (2, 2, [(2, 0), (1, 1), (0, 2)]),
    (3, 1, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    (1, 5, [(5,)]),
])
def test_monomial_index_examples(n, m, expected):
    idx = monomial_index(n, m)
    assert list(idx.exponents) == expected and idx.N == len(expected)


def test_monomial_index_is_complete_and_ordered():
    for n in range(1, 5):
        for m in range(0, 5):
            idx = monomial_index(n, m)
            assert idx.N == comb(n + m - 1, m)
            assert all(sum(e) == m for e in idx.exponents)
            assert list(idx.exponents) == sorted(set(idx.exponents), reverse=True)


def test_sym_power_base_case():
    rng = random.Random(1)
    M = random_system(rng, n=3)
    assert sym_power_matrix(M, 1) == M


def test_sym_power_diagonal():
    d1, d2 = RatFunc.const(3), X
    M = Matrix(2, 2, [d1, RatFunc.const(0), RatFunc.const(0), d2])
    S = sym_power_matrix(M, 2)
    zero = RatFunc.const(0)
    assert S == Matrix(3, 3, [d1 * 2, zero, zero, zero, d1 + d2, zero, zero, zero, d2 * 2])


def _derivative_oracle(M, m):
    """Matrix of y^a -> (y^a)' with y_k' = sum_l M[l, k] y_l, by expanding products."""
    n = M.rows
    idx = monomial_index(n, m)
    images = [MvPoly(n, {tuple(int(i == l) for i in range(n)): M[l, k] for l in range(n)})
              for k in range(n)]
    cols = []
    for alpha in idx.exponents:
        factors = [MvPoly.var(n, k) for k in range(n) for _ in range(alpha[k])]
        total = MvPoly.zero(n)
        for pos in range(len(factors)):
            k = next(k for k in range(n) if factors[pos] == MvPoly.var(n, k))
            prod = MvPoly.constant(n, 1)
            for q, f in enumerate(factors):
                prod = prod * (images[k] if q == pos else f)
            total = total + prod
        cols.append([total.terms.get(e, RatFunc.const(0)) for e in idx.exponents])
    N = idx.N
    return Matrix(N, N, [cols[c][r] for r in range(N) for c in range(N)])


def test_sym_power_nilpotent_against_leibniz():
    M = QMatrix([[0, 1], [0, 0]]).map(RatFunc.const)
    S = sym_power_matrix(M, 2)
    assert S == _derivative_oracle(M, 2)
    # with column k the image of y_k: y2' = y1, so (y1 y2)' = y1^2 and (y2^2)' = 2 y1 y2
    assert S[0, 1] == RatFunc.const(1) and S[1, 2] == RatFunc.const(2)


def test_sym_power_random_against_leibniz():
    rng = random.Random(6)
    for _ in range(8):
        M = random_system(rng)
        for m in (2, 3):
            assert sym_power_matrix(M, m) == _derivative_oracle(M, m)


def test_sym_power_respects_blocks():
    rng = random.Random(12)
    zero = RatFunc.const(0)
    e = [rand_ratfunc(rng, 1, density=1.0) for _ in range(5)]
    M = Matrix(3, 3, [e[0], e[1], zero, e[2], e[3], zero, zero, zero, e[4]])
    idx = monomial_index(3, 3)
    S = sym_power_matrix(M, 3)
    for r, beta in enumerate(idx.exponents):
        for c, alpha in enumerate(idx.exponents):
            if S[r, c]:
                assert beta[2] == alpha[2]


def test_sym_power_nonsquare():
    with pytest.raises(NonSquareMatrix):
        sym_power_matrix(QMatrix([[1, 2]]), 2)


@pytest.mark.parametrize("n,m,size", [(2, 2, 6), (3, 2, 18), (2, 3, 8), (3, 3, 30), (2, 0, 2)])
def test_sizes(n, m, size):
    rng = random.Random(n * 10 + m)
    lv = build_lv_matrix(random_system(rng, n=n), m)
    assert lv.size == size and lv.A_m.rows == lv.A_m.cols == size


def test_degree_zero_is_the_system():
    rng = random.Random(3)
    A = random_system(rng, n=3)
    assert build_lv_matrix(A, 0).A_m == A


def test_scalar_law():
    rng = random.Random(7)
    for _ in range(20):
        a = rand_ratfunc(rng, 2, density=1.0)
        for m in range(0, 5):
            lv = build_lv_matrix(Matrix(1, 1, [a]), m)
            assert lv.A_m == Matrix(1, 1, [a * (1 - m)])


def test_degree_one_is_the_lax_equation():
    rng = random.Random(19)
    for _ in range(10):
        A = random_system(rng)
        n = A.rows
        B = Matrix(n, n, [rand_ratfunc(rng, 1) for _ in range(n * n)])
        lv = build_lv_matrix(A, 1)
        res = lv_residual(lv, list(B.entries))
        assert res == list((B.derivative() - A.commutator(B)).entries)


def test_binding_contract_against_independent_bracket():
    rng = random.Random(29)
    for _ in range(20):
        A = random_system(rng)
        n = A.rows
        m = rng.randint(1, 3)
        lv = build_lv_matrix(A, m)
        c = [rand_ratfunc(rng, 1, density=0.4) for _ in range(lv.size)]
        Y = coeffs_to_field(c, lv.index)
        assert lv_residual(lv, c) == field_to_coeffs(bracket_oracle(A, Y), lv.index)
        assert lv_residual(lv, c) == field_to_coeffs(bracket_with_X(A, Y), lv.index)


def test_poles_of_lv_matrix_are_poles_of_A():
    rng = random.Random(31)
    for _ in range(10):
        A = random_system(rng)
        L = UniPoly([1])
        for e in A.entries:
            L = poly_lcm(L, e.den)
        for m in (1, 2, 3):
            for e in build_lv_matrix(A, m).A_m.entries:
                assert L.divmod(e.den)[1] == UniPoly()


def test_coefficient_conversions():
    idx = monomial_index(2, 2)
    e1 = [RatFunc.const(int(i == 0)) for i in range(6)]
    Y = coeffs_to_field(e1, idx)
    assert Y == VerticalField([MvPoly(2, {(2, 0): 1}), MvPoly.zero(2)])
    idx1 = monomial_index(2, 1)
    assert field_to_coeffs(VerticalField.euler(2), idx1) == [RatFunc.const(v) for v in (1, 0, 0, 1)]
    rng = random.Random(41)
    for _ in range(20):
        n, m = rng.choice((1, 2, 3)), rng.randint(0, 3)
        idx = monomial_index(n, m)
        Y = random_field(rng, n, m)
        assert coeffs_to_field(field_to_coeffs(Y, idx), idx) == Y
    with pytest.raises(ValueError):
        field_to_coeffs(VerticalField.euler(2), monomial_index(2, 2))
    with pytest.raises(DimensionMismatch):
        coeffs_to_field(e1[:5], idx)

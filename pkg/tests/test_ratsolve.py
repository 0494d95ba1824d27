import random
from fractions import Fraction

import pytest

from helpers import rand_poly, random_suite, random_system
from symgal.errors import NonSquareMatrix
from symgal.exactcore import Matrix, QMatrix, RatFunc, UniPoly, det, rank
from symgal.expr_io import parse_system
from symgal.ratsolve import (analyze_singularities, ansatz_numerators, degree_bound_at_infinity,
                             modular_numerators, rational_solution_basis, solution_bounds,
                             verify_solution)

X = RatFunc.x()
x_poly = UniPoly.x()


def system(rows):
    return parse_system({"n": len(rows), "A": rows}).A


CAUCHY_EULER = [["0", "1"], ["2/x^2", "0"]]
AIRY = [["0", "1"], ["x", "0"]]


def span_contains(vectors, target):
    """target lies in the Q-span of vectors (all rational-function vectors)."""
    n = len(target)
    pts = [Fraction(k, 7) for k in range(3, 3 + 4 * n)]
    rows_v = [[e(p) for p in pts for e in v] for v in vectors]
    rows_t = [e(p) for p in pts for e in target]
    return rank(QMatrix(rows_v + [rows_t])) == rank(QMatrix(rows_v)) if vectors else False


def test_singularities_examples():
    s = analyze_singularities(system(CAUCHY_EULER))
    assert len(s) == 1
    f = s[0]
    assert f.p == x_poly and f.pole_order == 2 and not f.rigorous
    s = analyze_singularities(system([["1/x", "0"], ["0", "2/x"]]))
    f = s[0]
    assert f.p == x_poly and f.pole_order == 1 and f.rigorous and f.exponent_bound == 0
    R = f.residue_matrix
    assert [[R[i, j] for j in range(2)] for i in range(2)] == [[UniPoly([1]), UniPoly()],
                                                               [UniPoly(), UniPoly([2])]]
    assert len(analyze_singularities(QMatrix([[1, 2], [3, 4]]))) == 0


def test_singularities_factor_split_and_bounds():
    # pole at x = 1 with residue -2 forces a denominator (x - 1)^2; x^2 + 1 stays whole
    s = analyze_singularities(system([["-2/(x-1) + 1/(x^2+1)"]]))
    by_factor = {str(f.p): f for f in s}
    assert set(by_factor) == {"UniPoly(x - 1)", "UniPoly(x^2 + 1)"}
    assert by_factor["UniPoly(x - 1)"].exponent_bound == 2
    assert s.universal_denominator() == UniPoly([1, -2, 1])
    s = analyze_singularities(system([["1/x^3"]]), pole_bound=2)
    assert s[0].exponent_bound == 2 and not s.rigorous


def test_degree_bound_examples():
    d = degree_bound_at_infinity(system([["1/x", "0"], ["0", "2/x"]]))
    assert d.bound >= 2 and d.rigorous
    assert degree_bound_at_infinity(QMatrix([[0, 0], [0, 0]])) == (0, True)
    airy = degree_bound_at_infinity(system(AIRY))
    assert not airy.rigorous and airy.bound == 2 * 2 + 8
    assert degree_bound_at_infinity(system(AIRY), inf_bound=3).bound == 3


def test_cauchy_euler_solutions():
    sol = rational_solution_basis(system(CAUCHY_EULER))
    assert sol.dimension == 2 and not sol.complete
    for target in ([X * X, X * 2], [X.inverse(), -(X * X).inverse()]):
        assert span_contains(sol.vectors, target)
    for v in sol.vectors:
        assert verify_solution(system(CAUCHY_EULER), v)


def test_zero_system_has_constant_solutions():
    sol = rational_solution_basis(QMatrix([[0, 0], [0, 0]]))
    assert sol.complete
    assert sol.vectors == [[RatFunc.const(1), RatFunc.const(0)],
                           [RatFunc.const(0), RatFunc.const(1)]]


def test_airy_has_none():
    sol = rational_solution_basis(system(AIRY))
    assert sol.dimension == 0 and not sol.complete and not sol.infinity.rigorous


def test_scalar_equations():
    assert rational_solution_basis(system([["3/x"]])).vectors == [[X ** 3]]
    assert rational_solution_basis(system([["-3/x"]])).vectors == [[(X ** 3).inverse()]]
    assert rational_solution_basis(system([["1/(2*x)"]])).dimension == 0
    assert rational_solution_basis(system([["1"]])).dimension == 0


def gauge_system(rng, n):
    """A = T' T^-1 for a random polynomial T, whose columns are rational solutions."""
    while True:
        T = Matrix(n, n, [RatFunc(rand_poly(rng, rng.randint(0, 2), -2, 2)) for _ in range(n * n)])
        d = det(T)
        if d:
            break
    adj = _adjugate(T)
    A = (T.derivative() @ adj).map(lambda e: e / d)
    return A, T


def _adjugate(T):
    n = T.rows
    out = []
    for i in range(n):
        for j in range(n):
            minor = [T[r, c] for r in range(n) for c in range(n) if r != j and c != i]
            m = det(Matrix(n - 1, n - 1, minor)) if n > 1 else RatFunc.const(1)
            out.append(m * (-1) ** (i + j))
    return Matrix(n, n, out)


def test_gauge_systems_recover_all_columns():
    rng = random.Random(101)
    for _ in range(12):
        n = rng.choice((1, 2, 3))
        A, T = gauge_system(rng, n)
        sol = rational_solution_basis(A)
        assert sol.dimension == n
        for j in range(n):
            assert span_contains(sol.vectors, [T[i, j] for i in range(n)])


def test_modular_and_ansatz_agree():
    rng = random.Random(202)
    systems = random_suite(25, seed=7) + [gauge_system(rng, rng.choice((2, 3)))[0] for _ in range(8)]
    for M in systems:
        a = rational_solution_basis(M, method="ansatz")
        b = rational_solution_basis(M, method="modular")
        assert a.vectors == b.vectors


def test_modular_respects_prime_budget():
    M = system(CAUCHY_EULER)
    sing, D, inf = solution_bounds(M)
    P = modular_numerators(M, D, inf.bound)
    assert P is not None and len(P) == 2
    assert modular_numerators(M, D, inf.bound, max_primes=0) is None


def fuchsian_system(rng):
    """R0/x + R1/(x - 1) with small integer residues: every bound is rigorous."""
    rows = [[f"{rng.randint(-2, 2)}/x + {rng.randint(-2, 2)}/(x-1)" for _ in range(2)]
            for _ in range(2)]
    return system(rows)


def _doubled_dimension(M):
    sing, D, inf = solution_bounds(M)
    D2 = UniPoly([1])
    for f in sing:
        D2 = D2 * f.p ** (2 * f.exponent_bound + 1)
    d2 = 2 * inf.bound + max(D2.degree, 0) + 1
    return len(ansatz_numerators(M, D2, d2))


def test_completeness_against_larger_bounds():
    rng = random.Random(303)
    systems = [M for M in random_suite(60, seed=11) if M.rows == 2][:10]
    systems += [gauge_system(rng, 2)[0] for _ in range(4)]
    systems += [system([["1/x", "0"], ["0", "2/x"]]), system([["-2/(x-1)", "1"], ["0", "1/x"]])]
    systems += [fuchsian_system(rng) for _ in range(8)]
    checked = 0
    for M in systems:
        sol = rational_solution_basis(M)
        if not sol.complete:
            continue
        checked += 1
        assert _doubled_dimension(M) == sol.dimension
    assert checked >= 5


def test_soundness_and_independence_on_random_suite():
    for M in random_suite(40, seed=5):
        sol = rational_solution_basis(M)
        for v in sol.vectors:
            assert verify_solution(M, v)
        if sol.vectors:
            # a nonzero solution cannot vanish at a regular point of M
            x0 = next(t for t in range(50) if all(e.den(t) != 0 for e in M.entries))
            vals = QMatrix([[e(x0) for e in v] for v in sol.vectors])
            assert rank(vals) == sol.dimension


def test_bound_overrides():
    M = system(CAUCHY_EULER)
    # with no room for the pole at 0 only the polynomial solution survives
    sol = rational_solution_basis(M, pole_bound=0)
    assert sol.dimension == 1
    assert span_contains(sol.vectors, [X * X, X * 2])
    assert rational_solution_basis(M, pole_bound=0, inf_bound=1).dimension == 0


def test_verify_solution_rejects_non_solutions():
    assert not verify_solution(system(CAUCHY_EULER), [X, RatFunc.const(1)])
    assert verify_solution(system(CAUCHY_EULER), [X * X, X * 2])


def test_accepts_system_spec():
    A = parse_system({"n": 2, "A": CAUCHY_EULER})
    assert rational_solution_basis(A).dimension == 2


@pytest.mark.parametrize("rows", [[["1", "2"]], [["1"], ["2"]]])
def test_nonsquare_rejected(rows):
    with pytest.raises(NonSquareMatrix):
        rational_solution_basis(QMatrix(rows))

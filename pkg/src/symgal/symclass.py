"""Symmetry bases per degree, the eigenring, and eigenvalue-structure
classification of linear symmetries.

Eigenvalue data is read from the squarefree decomposition of the
characteristic polynomial over Q: the roots of one squarefree factor are
pairwise distinct, so distinct-eigenvalue counts are exact without isolating
roots.  Non-derogatory means minpoly = charpoly.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import InvariantViolation, NonConstantCharpoly
from .exactcore import (Matrix, RatFunc, UniPoly, charpoly, charpoly_coeffs, minpoly,
                        squarefree_decomposition)
from .lvhier import build_lv_matrix, coeffs_to_field
from .ratsolve import rational_solution_basis
from .vfields import bracket_with_X

KINDS = ("trivial", "decomposer", "complete_decomposer", "solver", "decomposer_and_solver",
         "unclassified")


def _system_matrix(A):
    return A.A if hasattr(A, "A") else A


@dataclass
class SymmetryBasis:
    degree: int
    fields: list
    dimension: int
    complete: bool
    index: object = None
    solutions: object = None


def symmetry_basis(A, m, pole_bound=None, inf_bound=None, verify=True):
    """Homogeneous polynomial symmetries of degree m, as a basis over the constants."""
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    lv = build_lv_matrix(A, m)
    sol = rational_solution_basis(lv.A_m, pole_bound, inf_bound)
    fields = [coeffs_to_field(v, lv.index) for v in sol.vectors]
    if verify:
        for Y in fields:
            if not bracket_with_X(A, Y).is_zero():
                raise InvariantViolation(f"degree-{m} basis field is not a symmetry")
    return SymmetryBasis(m, fields, len(fields), sol.complete, lv.index, sol)


def pick_evaluation_point(A):
    """Smallest nonnegative integer that is not a pole of A."""
    dens = [e.den for e in _system_matrix(A).entries if e.den.degree > 0]
    x0 = 0
    while any(d(x0) == 0 for d in dens):
        x0 += 1
    return Fraction(x0)


# -- classification ---------------------------------------------------------

@dataclass
class Classification:
    kind: str
    distinct: int                       # distinct eigenvalues (over C)
    multiplicities: list                # algebraic multiplicity of each eigenvalue, descending
    squarefree: list                    # [(factor, multiplicity)] of the charpoly
    minpoly_degree: int
    n: int

    @property
    def is_decomposer(self):
        return self.distinct >= 2

    @property
    def is_complete_decomposer(self):
        return self.n >= 2 and self.distinct == self.n

    @property
    def is_solver(self):
        return self.minpoly_degree == self.n

    @property
    def score(self):
        return (self.distinct, self.is_solver)


def _classify(cp, mp_degree, scalar):
    n = cp.degree
    sqf = squarefree_decomposition(cp)
    distinct = sum(f.degree for f, _ in sqf)
    mult = sorted((m for f, m in sqf for _ in range(f.degree)), reverse=True)
    decomposer = distinct >= 2
    solver = mp_degree == n
    if scalar:
        kind = "trivial"
    elif n >= 2 and distinct == n:
        kind = "complete_decomposer"
    elif decomposer and solver:
        kind = "decomposer_and_solver"
    elif decomposer:
        kind = "decomposer"
    elif solver:
        kind = "solver"
    else:
        kind = "unclassified"
    return Classification(kind, distinct, mult, sqf, mp_degree, n)


def _is_scalar(B0):
    n = B0.rows
    c = B0[0, 0]
    return all(B0[i, j] == (c if i == j else 0) for i in range(n) for j in range(n))


def classify_rational(B0):
    """Classification of a constant (rational) matrix."""
    return _classify(charpoly(B0), minpoly(B0).degree, _is_scalar(B0))


def constant_charpoly(B):
    """det(lambda I - B) over Q(x); raises NonConstantCharpoly if it depends on x."""
    coeffs = charpoly_coeffs(B)
    out = []
    for c in coeffs:
        if isinstance(c, RatFunc):
            if not c.is_constant():
                raise NonConstantCharpoly(f"charpoly coefficient {c} depends on x")
            c = c.constant_value()
        out.append(Fraction(c))
    return UniPoly(out)


def _regular_point(B):
    dens = [e.den for e in B.entries if isinstance(e, RatFunc) and e.den.degree > 0]
    x0 = 0
    while any(d(x0) == 0 for d in dens):
        x0 += 1
    return Fraction(x0)


def classify_linear(B, A=None, x0=None):
    """Classify an eigenring element B of y' = A y by its eigenvalue structure."""
    if A is not None:
        M = _system_matrix(A)
        if B.derivative() != M.commutator(B):
            raise InvariantViolation("B does not satisfy dB/dx = [A, B]")
    cp = constant_charpoly(B)
    if x0 is None:
        x0 = pick_evaluation_point(A) if A is not None else _regular_point(B)
    B0 = B.evaluate(x0)
    if charpoly(B0) != cp:
        raise InvariantViolation("charpoly of B(x0) differs from the charpoly over Q(x)")
    return _classify(cp, minpoly(B0).degree, _is_scalar(B0) and _is_scalar_rf(B))


def _is_scalar_rf(B):
    n = B.rows
    c = B[0, 0]
    return all(B[i, j] == (c if i == j else 0) for i in range(n) for j in range(n))


@dataclass
class EigenringElement:
    B: object
    charpoly: UniPoly
    classification: Classification
    combination: tuple = ()
    heuristic: bool = False


class Eigenring(list):
    """Basis of the eigenring (a list of EigenringElement) with solver metadata."""

    def __init__(self, elements, complete=True, solutions=None):
        super().__init__(elements)
        self.complete = complete
        self.solutions = solutions


def _element(B, A, x0, combination=(), heuristic=False):
    cls = classify_linear(B, A, x0)
    return EigenringElement(B, constant_charpoly(B), cls, tuple(combination), heuristic)


def eigenring(A, pole_bound=None, inf_bound=None):
    """Rational matrix solutions of dB/dx = [A, B], one element per basis vector."""
    M = _system_matrix(A)
    n = M.rows
    lv = build_lv_matrix(M, 1)
    sol = rational_solution_basis(lv.A_m, pole_bound, inf_bound)
    x0 = pick_evaluation_point(M)
    out = []
    for k, c in enumerate(sol.vectors):
        # degree-1 layout: c[j*n + i] is the coefficient of y_i in component j
        B = Matrix(n, n, c)
        out.append(_element(B, M, x0, tuple(int(i == k) for i in range(len(sol.vectors)))))
    return Eigenring(out, sol.complete, sol)


# -- witness search ------------------------------------------------------------

def _values(budget):
    vals = []
    for v in range(1, budget + 1):
        vals.extend((v, -v))
    return vals


def _combinations(r, budget, cap):
    """Integer vectors in [-budget, budget]^r ordered by support size, then abs sum.

    Within those, generation order: supports lexicographically, values as
    1, -1, 2, -2, ...
    """
    vals = _values(budget)
    emitted = 0
    for s in range(1, r + 1):
        level = []
        for support in combinations(range(r), s):
            for choice in product(vals, repeat=s):
                v = [0] * r
                for i, c in zip(support, choice):
                    v[i] = c
                level.append(tuple(v))
            if emitted + len(level) > 4 * cap:
                break
        level.sort(key=lambda v: sum(abs(c) for c in v))
        for v in level:
            yield v
            emitted += 1
            if emitted >= cap:
                return


def best_classification(elements, budget=3, x0=None, cap=4000, A=None):
    """Best witness among small integer combinations of eigenring basis elements.

    Maximizes (distinct-eigenvalue count, solver property); ties go to the
    first combination in search order (see ``_combinations``).  The result is
    marked heuristic since only a finite sample of the eigenring is searched.
    """
    if not elements:
        raise ValueError("empty eigenring basis")
    n = elements[0].B.rows
    if x0 is None:
        x0 = pick_evaluation_point(A) if A is not None else _regular_point(elements[0].B)
    values = [e.B.evaluate(x0) for e in elements]
    r = len(elements)
    best, best_key = None, None
    target = (n, True) if n >= 2 else (1, True)
    for v in _combinations(r, max(budget, 1), cap):
        B0 = None
        for c, Bk in zip(v, values):
            if c:
                term = Bk.scale(Fraction(c))
                B0 = term if B0 is None else B0 + term
        cls = classify_rational(B0)
        key = cls.score
        if best_key is None or key > best_key:
            best, best_key = v, key
            if key >= target:
                break
    B = None
    for c, e in zip(best, elements):
        if c:
            term = e.B.scale(Fraction(c))
            B = term if B is None else B + term
    return _element(B, A, x0, best, heuristic=True)


def eigenring_closure_defect(A, elements):
    """Pairs (i, j) whose product B_i B_j fails the eigenring equation (should be empty)."""
    M = _system_matrix(A)
    bad = []
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            P = a.B @ b.B
            if P.derivative() != M.commutator(P):
                bad.append((i, j))
    return bad

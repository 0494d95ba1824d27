"""Rational solutions of y' = M(x) y over Q(x).

Every rational solution has the shape y = P/D for a universal denominator D
built from local exponent bounds at the poles of M, and polynomial
numerators P of degree at most d (a bound read off at infinity).  The
numerators satisfy

    Lm (P' D - P D') = D Qm P,        Lm = lcm of denominators, Qm = Lm M.

Two solvers share this ansatz.  The default one works modulo word-size
primes: a local fundamental matrix at a regular point turns the problem into
an n-column kernel, the reduced echelon basis of the numerators is lifted by
CRT and rational reconstruction, and each lifted vector is checked by exact
substitution.  The kernel dimension mod p never undercounts, so a verified
lift of full size is complete.  The second solver assembles the coefficient
equations over Q directly; it is the fallback and the test oracle.
"""

from fractions import Fraction
from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

import numpy as np

from .errors import InvariantViolation, NonSquareMatrix
from .exactcore import ONE, Matrix, QMatrix, RatFunc, UniPoly, charpoly, integer_roots, nullspace
from .exactcore.limits import check_ints
from .exactcore.linalg import poly_of_matrix
from .exactcore.modular import (crt_pair, nullspace_mod, prime_bits_for, primes_below,
                                rational_reconstruction, rref_mod)
from .exactcore.poly import _lcm, poly_lcm, poly_xgcd, rational_roots, squarefree_decomposition

MAX_PRIMES = 400


class SingularFactor(NamedTuple):
    p: UniPoly
    pole_order: int
    residue_matrix: object  # Matrix over Q[x]/(p) (UniPoly entries) or None
    exponent_bound: int
    rigorous: bool


@dataclass
class SingularityData:
    factors: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    @property
    def rigorous(self):
        return all(f.rigorous for f in self.factors)

    def universal_denominator(self):
        D = ONE
        for f in self.factors:
            if f.exponent_bound:
                D = D * f.p ** f.exponent_bound
        return D


class DegreeBound(NamedTuple):
    bound: int
    rigorous: bool


@dataclass
class SolutionBasis:
    vectors: list
    dimension: int
    complete: bool = True
    denominator: UniPoly = ONE
    degree_bound: int = 0
    numerators: list = field(default_factory=list)
    singularities: SingularityData = field(default_factory=SingularityData)
    infinity: DegreeBound = DegreeBound(0, True)


def _matrix_of(M):
    M = M.A if hasattr(M, "A") else M
    if not M.is_square():
        raise NonSquareMatrix(f"system matrix is {M.shape}")
    return M.map(lambda e: e if isinstance(e, RatFunc) else RatFunc.const(e))


def _common_denominator(M):
    Lm = ONE
    for e in M.entries:
        if e.den.degree > 0:
            Lm = poly_lcm(Lm, e.den)
    return Lm


def _polynomial_part(M, Lm):
    return [[e.num * Lm.exact_div(e.den) for e in M.row(i)] for i in range(M.rows)]


def _residue_matrix(M, p):
    dp = p.derivative()
    out = []
    for e in M.entries:
        q, r = e.den.divmod(p)
        if r or not e.num:
            out.append(UniPoly())
            continue
        u = (q * dp) % p
        _, s, _ = poly_xgcd(u, p)
        out.append((e.num * s) % p)
    return Matrix(M.rows, M.cols, out)


def _companion(p):
    p = p.monic()
    k = p.degree
    rows = [[0] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = 1
    for i in range(k):
        rows[i][k - 1] = -p[i]
    return QMatrix(rows)


def residue_integer_eigenvalues(R, p):
    """Integers that are eigenvalues of R(alpha) for some root alpha of p.

    For deg p > 1 the entries are evaluated at the companion matrix of p; the
    characteristic polynomial of the resulting block matrix is the product of
    those of R(alpha) over the roots, since p is squarefree.
    """
    n = R.rows
    if p.degree == 1:
        root = -p[0] / p[1]
        Ra = Matrix(n, n, [e(root) for e in R.entries])
        return sorted(integer_roots(charpoly(Ra)))
    C = _companion(p)
    k = p.degree
    blocks = [poly_of_matrix(e, C) for e in R.entries]
    rows = []
    for i in range(n):
        for a in range(k):
            rows.append([blocks[i * n + j][a, b] for j in range(n) for b in range(k)])
    return sorted(integer_roots(charpoly(QMatrix(rows))))


def analyze_singularities(M, pole_bound=None):
    """Poles of M with local exponent bounds for rational solutions.

    Listed factors are squarefree, coprime, and either linear with a rational
    root or free of rational roots.  Simple poles get the indicial bound from
    the residue matrix; higher-order poles get the fallback
    ``pole_order * n + 4`` unless ``pole_bound`` overrides it.
    """
    M = _matrix_of(M)
    n = M.rows
    Lm = _common_denominator(M)
    factors = []
    if Lm.degree <= 0:
        return SingularityData(factors)
    for f, k in squarefree_decomposition(Lm):
        pieces = []
        rest = f
        for r in sorted(rational_roots(f)):
            lin = UniPoly([-r, 1])
            pieces.append(lin)
            rest = rest.exact_div(lin)
        if rest.degree > 0:
            pieces.append(rest.monic())
        for p in pieces:
            if k == 1:
                R = _residue_matrix(M, p)
                eig = residue_integer_eigenvalues(R, p)
                bound = max(0, -eig[0]) if eig else 0
                factors.append(SingularFactor(p, 1, R, bound, True))
            else:
                bound = pole_bound if pole_bound is not None else k * n + 4
                factors.append(SingularFactor(p, k, None, bound, False))
    return SingularityData(factors)


def degree_bound_at_infinity(M, D=ONE, inf_bound=None):
    """Bound on the degree of the numerators P of solutions P/D.

    When x*M(x) has a finite limit M_inf, a solution behaving like x^e y0
    forces M_inf y0 = e y0, so deg P <= deg D + (largest integer eigenvalue).
    Otherwise the fallback ``deg D + 2n + 8`` (or ``deg D + inf_bound``) is
    used and flagged non-rigorous.
    """
    M = _matrix_of(M)
    n = M.rows
    degD = max(D.degree, 0)
    limit = []
    for e in M.entries:
        if not e:
            limit.append(Fraction(0))
            continue
        gap = e.num.degree - e.den.degree
        if gap > -1:
            extra = inf_bound if inf_bound is not None else 2 * n + 8
            return DegreeBound(degD + extra, False)
        limit.append(e.num.lc() / e.den.lc() if gap == -1 else Fraction(0))
    eig = integer_roots(charpoly(Matrix(n, n, limit)))
    if not eig:
        return DegreeBound(0, True)
    return DegreeBound(max(0, degD + max(eig)), True)


# -- equation residual ------------------------------------------------------

def numerator_residual(Lm, Qm, D, P):
    """Lm (P' D - P D') - D Qm P, componentwise."""
    dD = D.derivative()
    out = []
    for j, row in enumerate(Qm):
        acc = UniPoly()
        for q, pk in zip(row, P):
            if q and pk:
                acc = acc + q * pk
        out.append(Lm * (P[j].derivative() * D - P[j] * dD) - D * acc)
    return out


def _vector_to_polys(vec, n, d):
    return [UniPoly(vec[j * (d + 1):(j + 1) * (d + 1)]) for j in range(n)]


# -- exact ansatz --------------------------------------------------------------

def ansatz_numerators(M, D, d):
    """Reduced echelon basis of numerator vectors, by direct linear algebra over Q."""
    M = _matrix_of(M)
    n = M.rows
    Lm = _common_denominator(M)
    Qm = _polynomial_part(M, Lm)
    dD = D.derivative()
    R = d + max(D.degree, 0) + max(Lm.degree - 1, max(q.degree for r in Qm for q in r), 0)
    cols = []
    for j0 in range(n):
        for k in range(d + 1):
            xk = UniPoly.monomial(k)
            own = Lm * (xk.derivative() * D - xk * dD)
            col = []
            for j in range(n):
                r = -(D * Qm[j][j0] * xk)
                if j == j0:
                    r = r + own
                col.extend(r[t] for t in range(R + 1))
            cols.append(col)
    nrows = n * (R + 1)
    entries = [cols[c][r] for r in range(nrows) for c in range(len(cols))]
    basis = nullspace(Matrix(nrows, len(cols), entries))
    return [_vector_to_polys(v, n, d) for v in basis]


# -- modular solver ----------------------------------------------------------

class _Local:
    """Integer data of the shifted equation Lm(x0 + t) Phi' = Qm(x0 + t) Phi."""

    def __init__(self, Lm, Qm, D, d, x0):
        self.n = n = len(Qm)
        self.d = d
        self.x0 = x0
        Ls = Lm.shift(x0)
        Qs = [[q.shift(x0) for q in row] for row in Qm]
        Ds = D.shift(x0)
        scale = Ls.den
        for row in Qs:
            for q in row:
                scale = _lcm(scale, q.den)
        self.L = [v * (scale // Ls.den) for v in Ls.ints]
        B = max((q.degree for row in Qs for q in row), default=-1)
        self.B = max(B, 0)
        self.Q = [[[0] * n for _ in range(n)] for _ in range(self.B + 1)]
        for i, row in enumerate(Qs):
            for j, q in enumerate(row):
                f = scale // q.den
                for b, v in enumerate(q.ints):
                    self.Q[b][i][j] = v * f
        self.Dc = list(Ds.ints)
        check_ints(self.L + self.Dc + [v for Qb in self.Q for row in Qb for v in row],
                   "shifted equation")
        degD = len(self.Dc) - 1
        self.K = d + degD + max(len(self.L) - 2, B, 0) + 1
        self.max_terms = max(n * (self.B + 1), len(self.L), len(self.Dc), d + 1, n, 2)

    def solve_mod(self, p):
        """(rank data, pivots, rows) of the numerator echelon basis mod p."""
        n, K, d = self.n, self.K, self.d
        L = np.array([v % p for v in self.L], dtype=np.int64)
        if not L[0]:
            return None
        Qcat = np.array([[self.Q[b][i][j] % p for b in range(self.B + 1) for j in range(n)]
                         for i in range(n)], dtype=np.int64)
        Phi = np.zeros((K + 1, n, n), dtype=np.int64)
        Phi[0] = np.eye(n, dtype=np.int64)
        degL = len(self.L) - 1
        l0 = int(L[0])
        for k in range(K):
            bs = min(self.B, k)
            stack = Phi[k - bs:k + 1][::-1].reshape(-1, n)
            acc = Qcat[:, :(bs + 1) * n] @ stack % p
            amax = min(degL, k + 1)
            if amax >= 1:
                a = np.arange(1, amax + 1)
                w = L[1:amax + 1] * ((k + 1 - a) % p) % p
                acc = (acc - np.tensordot(w, Phi[k + 1 - a], axes=1) % p) % p
            Phi[k + 1] = acc * pow(l0 * (k + 1) % p, -1, p) % p
        Dp = np.array([v % p for v in self.Dc], dtype=np.int64)
        degD = len(Dp) - 1

        def coeff(k):
            j = np.arange(0, min(degD, k) + 1)
            return np.tensordot(Dp[j], Phi[k - j], axes=1) % p

        if K > d:
            cond = np.concatenate([coeff(k) for k in range(d + 1, K + 1)], axis=0)
            V = nullspace_mod(cond, p)
        else:
            V = np.eye(n, dtype=np.int64)
        r = V.shape[0]
        if r == 0:
            return 0, (), None
        T = np.stack([coeff(k) for k in range(d + 1)])          # (d+1, n, n)
        Pt = (np.einsum("kij,rj->kir", T, V) % p).reshape(d + 1, n * r)
        # back to powers of x: t = x - x0
        shift = (-self.x0) % p
        S = np.zeros((d + 1, d + 1), dtype=np.int64)
        for j in range(d + 1):
            pw = 1
            for i in range(j, -1, -1):
                S[i, j] = comb(j, i) % p * pw % p
                pw = pw * shift % p
        Px = (S @ Pt % p).reshape(d + 1, n, r).transpose(2, 1, 0).reshape(r, n * (d + 1))
        rows, pivots = rref_mod(Px, p)
        return r, tuple(pivots), rows


def _pick_regular_point(Lm):
    x0 = 0
    while Lm(x0) == 0:
        x0 += 1
    return x0


def modular_numerators(M, D, d, max_primes=MAX_PRIMES):
    """Numerator basis via the modular solver, or None when lifting fails."""
    M = _matrix_of(M)
    n = M.rows
    Lm = _common_denominator(M)
    Qm = _polynomial_part(M, Lm)
    loc = _Local(Lm, Qm, D, d, _pick_regular_point(Lm))
    bits = prime_bits_for(loc.max_terms)
    best = None            # (r, pivots)
    residues = None
    modulus = 1
    candidate = None
    used = 0
    for p in primes_below(1 << bits):
        if used >= max_primes:
            break
        res = loc.solve_mod(p)
        if res is None:
            continue
        used += 1
        r, pivots, rows = res
        if r == 0:
            return []
        key = (r, pivots)
        if best is not None and key > best:
            continue
        if best is None or key < best:
            best, residues, modulus, candidate = key, None, 1, None
        rows = [[int(v) for v in row] for row in rows]
        if candidate is not None and _matches(candidate, rows, p):
            P = [_vector_to_polys(v, n, d) for v in candidate]
            if all(not c for P_i in P for c in numerator_residual(Lm, Qm, D, P_i)):
                return P
        if residues is None:
            residues = rows
        else:
            residues = [[crt_pair(a, modulus, b, p) for a, b in zip(ra, rb)]
                        for ra, rb in zip(residues, rows)]
        modulus *= p
        candidate = _reconstruct(residues, modulus)
    return None


def _matches(candidate, rows, p):
    for cr, rr in zip(candidate, rows):
        for f, v in zip(cr, rr):
            if (f.numerator - v * f.denominator) % p:
                return False
    return True


def _reconstruct(residues, modulus):
    out = []
    for row in residues:
        vals = []
        for a in row:
            f = rational_reconstruction(a, modulus)
            if f is None:
                return None
            vals.append(f)
        check_ints([v.numerator for v in vals] + [v.denominator for v in vals],
                   "rational reconstruction")
        out.append(vals)
    return out


# -- driver ------------------------------------------------------------------

def solution_bounds(M, pole_bound=None, inf_bound=None):
    sing = analyze_singularities(M, pole_bound)
    D = sing.universal_denominator()
    inf = degree_bound_at_infinity(M, D, inf_bound)
    return sing, D, inf


def rational_solution_basis(M, pole_bound=None, inf_bound=None, method="auto"):
    """Basis of rational solutions of y' = M y within the computed bounds.

    ``method`` is "auto" (modular, falling back to the exact ansatz), "modular"
    or "ansatz".  ``complete`` is true when every bound was rigorous.
    """
    M = _matrix_of(M)
    n = M.rows
    sing, D, inf = solution_bounds(M, pole_bound, inf_bound)
    d = inf.bound
    P = None
    if method in ("auto", "modular"):
        P = modular_numerators(M, D, d)
        if P is None and method == "modular":
            raise RuntimeError("modular lifting did not converge")
    if P is None:
        P = ansatz_numerators(M, D, d)
    Lm = _common_denominator(M)
    Qm = _polynomial_part(M, Lm)
    vectors = []
    for Pi in P:
        if any(numerator_residual(Lm, Qm, D, Pi)):
            raise InvariantViolation("rational solution failed substitution check")
        vectors.append([RatFunc(c, D) for c in Pi])
    return SolutionBasis(vectors, len(vectors), sing.rigorous and inf.rigorous, D, d, P,
                         sing, inf)


def verify_solution(M, y):
    """Exact check of y' = M y."""
    M = _matrix_of(M)
    y = [e if isinstance(e, RatFunc) else RatFunc.const(e) for e in y]
    My = M.apply(y)
    return all(a.derivative() == b for a, b in zip(y, My))

"""Exact linear algebra over Q: nullspace, rank, characteristic and minimal polynomials."""

from fractions import Fraction
from math import gcd

from ..errors import NonSquareMatrix
from .limits import check_ints
from .matrix import Matrix, identity
from .poly import ONE, UniPoly, X, _lcm


def _integer_rows(rows):
    out = []
    for r in rows:
        d = 1
        for c in r:
            if c:
                d = _lcm(d, Fraction(c).denominator)
        out.append([int(Fraction(c) * d) for c in r])
    return out


def bareiss_echelon(int_rows, ncols):
    """Fraction-free forward elimination in place.

    Returns the list of pivot columns; rows beyond ``len(pivots)`` are zero.
    Intermediate entries are minors of the input, so all divisions are exact.
    """
    a = int_rows
    nrows = len(a)
    pivots = []
    prev = 1
    k = 0
    for c in range(ncols):
        if k == nrows:
            break
        p = None
        for r in range(k, nrows):
            if a[r][c]:
                p = r
                break
        if p is None:
            continue
        if p != k:
            a[k], a[p] = a[p], a[k]
        pk = a[k]
        piv = pk[c]
        for r in range(k + 1, nrows):
            ar = a[r]
            f = ar[c]
            if f:
                for j in range(c + 1, ncols):
                    ar[j] = (piv * ar[j] - f * pk[j]) // prev
                ar[c] = 0
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if ar[j]:
                        ar[j] = piv * ar[j] // prev
        check_ints(pk, "fraction-free elimination")
        prev = piv
        pivots.append(c)
        k += 1
    return pivots


def rref(M):
    """Reduced row echelon form of a rational matrix.

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    rows = M.to_rows() if isinstance(M, Matrix) else [list(r) for r in M]
    if not rows:
        return [], []
    ncols = len(rows[0])
    a = _integer_rows(rows)
    pivots = bareiss_echelon(a, ncols)
    r = len(pivots)
    # primitive integer rows keep the back-substitution small
    red = []
    for i in range(r):
        row = a[i]
        g = 0
        for v in row:
            g = gcd(g, v)
        red.append([Fraction(v, g) for v in row] if g > 1 else [Fraction(v) for v in row])
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        piv = red[i][c]
        if piv != 1:
            inv = 1 / piv
            red[i] = [v * inv for v in red[i]]
        ri = red[i]
        for k in range(i):
            f = red[k][c]
            if f:
                rk = red[k]
                red[k] = [x - f * y for x, y in zip(rk, ri)]
    return red, pivots


def rank(M):
    rows = M.to_rows()
    return len(bareiss_echelon(_integer_rows(rows), M.cols))


def nullspace(M):
    """Basis of ker M, as a list of ``Fraction`` lists in reduced echelon form."""
    ncols = M.cols
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis)
    return canon


def det(M):
    if not M.is_square():
        raise NonSquareMatrix(f"determinant of {M.shape} matrix")
    n = M.rows
    a = [list(r) for r in M.to_rows()]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def _hessenberg(M):
    n = M.rows
    H = [list(r) for r in M.to_rows()]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        piv = H[m][m - 1]
        for i in range(m + 1, n):
            u = H[i][m - 1] / piv
            if u:
                H[i] = [x - u * y for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] += u * row[i]
    return H


def charpoly(M):
    """Characteristic polynomial det(lambda*I - M) of a rational matrix."""
    if not M.is_square():
        raise NonSquareMatrix(f"characteristic polynomial of {M.shape} matrix")
    n = M.rows
    H = _hessenberg(M)
    p = [ONE]
    for m in range(1, n + 1):
        pm = (X - H[m - 1][m - 1]) * p[m - 1]
        t = Fraction(1)
        for i in range(1, m):
            t *= H[m - i][m - i - 1]
            if not t:
                break
            h = H[m - i - 1][m - 1]
            if h:
                pm = pm - p[m - i - 1] * (t * h)
        p.append(pm)
    return p[n]


def charpoly_coeffs(M):
    """Coefficients (lowest first) of det(lambda*I - M) over any field of characteristic 0.

    Faddeev-LeVerrier; used for matrices over Q(x).
    """
    if not M.is_square():
        raise NonSquareMatrix(f"characteristic polynomial of {M.shape} matrix")
    n = M.rows
    one = M.entries[0] * 0 + 1
    ring = "rf" if not isinstance(one, Fraction) else "q"
    I = identity(n, ring)
    c = [None] * (n + 1)
    c[n] = one
    Mk = None
    for k in range(1, n + 1):
        Mk = I.scale(c[n - k + 1]) if Mk is None else (M @ Mk) + I.scale(c[n - k + 1])
        c[n - k] = -(M @ Mk).trace() * Fraction(1, k)
    return c


def minpoly(M):
    """Minimal polynomial of a rational matrix (Krylov sequence of powers)."""
    if not M.is_square():
        raise NonSquareMatrix(f"minimal polynomial of {M.shape} matrix")
    n = M.rows
    powers = [identity(n)]
    for k in range(1, n + 1):
        powers.append(powers[-1] @ M)
        cols = [p.entries for p in powers]
        A = Matrix(n * n, k + 1, [cols[j][i] for i in range(n * n) for j in range(k + 1)])
        ker = nullspace(A)
        if ker:
            v = ker[-1]
            # the unique dependency has a nonzero top coefficient
            return UniPoly(v).monic()
    raise AssertionError("Cayley-Hamilton violated")


def poly_of_matrix(p, M):
    n = M.rows
    acc = identity(n).scale(Fraction(0))
    for c in reversed(p.coeffs):
        acc = acc @ M + identity(n).scale(c)
    return acc


def solve_unique(M, b):
    """Solve M x = b for square invertible M; None when singular."""
    n = M.rows
    aug = Matrix(n, n + 1, [e for i in range(n) for e in M.row(i) + [b[i]]])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]

"""Dense matrices over Q (``Fraction``) or Q(x) (``RatFunc``).

A single immutable ``Matrix`` class serves both rings; entries are stored
row-major.  ``QMatrix`` and ``RfMatrix`` are constructors that coerce the
entries into the right scalar type.
"""

from fractions import Fraction

from ..errors import DimensionMismatch, NonSquareMatrix
from .ratfunc import ONE_RF, ZERO_RF, RatFunc, rf_sum


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionMismatch("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.to_rows()})"

    def map(self, f):
        return Matrix(self.rows, self.cols, [f(e) for e in self.entries])

    def transpose(self):
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c):
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        A, B = self.entries, other.entries
        rational_functions = any(isinstance(e, RatFunc) for e in A) or any(isinstance(e, RatFunc) for e in B)
        out = []
        for i in range(n):
            arow = A[i * m:(i + 1) * m]
            for j in range(p):
                terms = [a * B[k * p + j] for k, a in enumerate(arow) if a]
                if rational_functions:
                    out.append(rf_sum(t if isinstance(t, RatFunc) else RatFunc.const(t) for t in terms))
                else:
                    out.append(sum(terms, Fraction(0)))
        return Matrix(n, p, out)

    def apply(self, vec):
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        col = Matrix(self.cols, 1, vec)
        return list((self @ col).entries)

    def trace(self):
        if not self.is_square():
            raise NonSquareMatrix(f"trace of {self.shape} matrix")
        t = self.entries[0] * 0
        for i in range(self.rows):
            t = t + self[i, i]
        return t

    def commutator(self, other):
        return self @ other - other @ self

    def derivative(self):
        return self.map(lambda e: e.derivative())

    def evaluate(self, x0):
        return self.map(lambda e: e(x0))

    def is_zero(self):
        return all(not e for e in self.entries)


def QMatrix(rows):
    return Matrix.from_rows([[Fraction(e) for e in r] for r in rows])


def _to_rf(e):
    if isinstance(e, RatFunc):
        return e
    return RatFunc(e)


def RfMatrix(rows):
    return Matrix.from_rows([[_to_rf(e) for e in r] for r in rows])


def identity(n, ring="q"):
    one, zero = (ONE_RF, ZERO_RF) if ring == "rf" else (Fraction(1), Fraction(0))
    return Matrix(n, n, [one if i == j else zero for i in range(n) for j in range(n)])


def zeros(rows, cols, ring="q"):
    zero = ZERO_RF if ring == "rf" else Fraction(0)
    return Matrix(rows, cols, [zero] * (rows * cols))


def kron(A, B):
    r, c = A.rows * B.rows, A.cols * B.cols
    out = [None] * (r * c)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A[i, j]
            for k in range(B.rows):
                for m in range(B.cols):
                    out[(i * B.rows + k) * c + j * B.cols + m] = a * B[k, m]
    return Matrix(r, c, out)


def to_rf_matrix(M):
    return M.map(_to_rf)

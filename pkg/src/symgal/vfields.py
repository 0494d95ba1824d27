"""Polynomial vertical vector fields with coefficients in Q(x).

A vertical field ``sum_j P_j(x, y) d/dy_j`` is stored as ``n`` sparse
multivariate polynomials in ``y_1..y_n`` whose coefficients are ``RatFunc``.
The x-dependence lives entirely in the coefficients, so ``lie_bracket`` is
the purely vertical bracket and the ``d/dx`` part of the connection field
``X = d/dx + v_A`` is handled by ``bracket_with_X``.
"""

from itertools import combinations_with_replacement

from .errors import DimensionMismatch, VanishingConstantTerm
from .exactcore import ONE_RF, ZERO_RF, Matrix, RatFunc, rf_sum


def _rf(c):
    if isinstance(c, RatFunc):
        return c
    return RatFunc.const(c)


class MvPoly:
    """Sparse polynomial in n variables: exponent tuple -> nonzero coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n:
                    raise DimensionMismatch(f"exponent {exp} in {n} variables")
                c = _rf(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms):
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n, c):
        c = _rf(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n, i):
        exp = [0] * n
        exp[i] = 1
        return cls._raw(n, {tuple(exp): ONE_RF})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _rf(c)
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        return cls._raw(n, terms)

    # -- queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, r=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (r is None or r in degs)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), ZERO_RF)

    def constant_term(self):
        return self.terms.get((0,) * self.n, ZERO_RF)

    def is_y_free(self):
        return all(not any(e) for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, MvPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MvPoly({self.to_text()})"

    # -- ring operations -----------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, MvPoly):
            other = MvPoly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MvPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MvPoly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MvPoly):
            other = MvPoly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return MvPoly.constant(self.n, other) - self

    def scale(self, c):
        c = _rf(c)
        if not c:
            return MvPoly.zero(self.n)
        return MvPoly._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MvPoly):
            return self.scale(other)
        self._check(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc.setdefault(e, []).append(c1 * c2)
        out = {}
        for e, cs in acc.items():
            s = cs[0] if len(cs) == 1 else rf_sum(cs)
            if s:
                out[e] = s
        return MvPoly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MvPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff_y(self, k):
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return MvPoly._raw(self.n, out)

    def diff_x(self):
        out = {}
        for e, c in self.terms.items():
            dc = c.derivative()
            if dc:
                out[e] = dc
        return MvPoly._raw(self.n, out)

    def homogeneous_part(self, r):
        return MvPoly._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) == r})

    def truncate(self, order):
        return MvPoly._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) <= order})

    def evaluate_x(self, x0):
        """Freeze the coefficients at x = x0 (constant coefficients)."""
        return MvPoly(self.n, {e: RatFunc.const(c(x0)) for e, c in self.terms.items()})

    def has_constant_coefficients(self):
        return all(c.is_constant() for c in self.terms.values())

    def substitute_linear(self, rows):
        """P(sigma y) where ``rows[i]`` gives y_i -> sum_j rows[i][j] y_j."""
        forms = [MvPoly.linear_form(r) for r in rows]
        n = self.n
        out = MvPoly.zero(len(rows[0]) if rows else n)
        for e, c in self.terms.items():
            t = MvPoly.constant(out.n, c)
            for i, k in enumerate(e):
                if k:
                    t = t * (forms[i] ** k)
            out = out + t
        return out

    def map_coefficients(self, f):
        return MvPoly(self.n, {e: f(c) for e, c in self.terms.items()})

    def to_text(self, names=None, var="x"):
        if names is None:
            names = [f"y{i + 1}" for i in range(self.n)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            ctext = c.to_text(var)
            if not mono:
                parts.append(ctext if c.is_polynomial() and len(c.num.coeffs) <= 1 else f"({ctext})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif c.is_constant() and c.num.lc().denominator == 1:
                parts.append(f"{ctext}*{mono}")
            else:
                parts.append(f"({ctext})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


class VerticalField:
    """``sum_j components[j] * d/dy_j``."""

    __slots__ = ("n", "components")

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise DimensionMismatch("a vector field needs at least one component")
        n = components[0].n
        if len(components) != n or any(c.n != n for c in components):
            raise DimensionMismatch("components must be n polynomials in n variables")
        self.n = n
        self.components = components

    @classmethod
    def zero(cls, n):
        return cls([MvPoly.zero(n) for _ in range(n)])

    @classmethod
    def euler(cls, n):
        return cls([MvPoly.var(n, i) for i in range(n)])

    @classmethod
    def linear(cls, B):
        """The linear field v_B = sum_i (B y)_i d/dy_i."""
        rows = B.to_rows() if isinstance(B, Matrix) else B
        return cls([MvPoly.linear_form(r) for r in rows])

    @classmethod
    def constant(cls, values):
        n = len(values)
        return cls([MvPoly.constant(n, v) for v in values])

    def __getitem__(self, j):
        return self.components[j]

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    @property
    def degree(self):
        return max(c.degree for c in self.components)

    def is_homogeneous(self, r=None):
        degs = {sum(e) for c in self.components for e in c.terms}
        if not degs:
            return True
        return len(degs) == 1 and (r is None or r in degs)

    def __eq__(self, other):
        if not isinstance(other, VerticalField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "VerticalField(" + ", ".join(c.to_text() for c in self.components) + ")"

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"fields on C^{self.n} and C^{other.n}")

    def __add__(self, other):
        self._check(other)
        return VerticalField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._check(other)
        return VerticalField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VerticalField([-a for a in self.components])

    def scale(self, c):
        return VerticalField([a.scale(c) for a in self.components])

    def multiply(self, f):
        """Multiply every component by the polynomial f."""
        return VerticalField([a * f for a in self.components])

    def diff_x(self):
        return VerticalField([a.diff_x() for a in self.components])

    def homogeneous_part(self, r):
        return VerticalField([a.homogeneous_part(r) for a in self.components])

    def evaluate_x(self, x0):
        return VerticalField([a.evaluate_x(x0) for a in self.components])

    def has_constant_coefficients(self):
        return all(a.has_constant_coefficients() for a in self.components)

    def apply(self, f):
        """Derivation of the polynomial f along this field."""
        terms = [self.components[k] * f.diff_y(k) for k in range(self.n) if self.components[k]]
        out = MvPoly.zero(self.n)
        for t in terms:
            out = out + t
        return out

    def to_text(self):
        return [c.to_text() for c in self.components]


class AmbientField:
    """xcomp * d/dx + vertical."""

    __slots__ = ("xcomp", "vertical")

    def __init__(self, xcomp, vertical):
        if xcomp.n != vertical.n:
            raise DimensionMismatch("x-component and vertical part disagree on n")
        self.xcomp = xcomp
        self.vertical = vertical

    @classmethod
    def connection(cls, A):
        """The field X = d/dx + v_A of y' = A y."""
        A = _system_matrix(A)
        return cls(MvPoly.constant(A.rows, 1), VerticalField.linear(A))


def _system_matrix(A):
    return A.A if hasattr(A, "A") else A


def lie_bracket(Y, Z):
    """Vertical Lie bracket: [Y, Z]_j = sum_k Y_k dZ_j/dy_k - Z_k dY_j/dy_k."""
    if Y.n != Z.n:
        raise DimensionMismatch(f"fields on C^{Y.n} and C^{Z.n}")
    return VerticalField([Y.apply(Z.components[j]) - Z.apply(Y.components[j]) for j in range(Y.n)])


def bracket_with_X(A, Y):
    """[X, Y] = dY/dx + [v_A, Y]; zero exactly when Y is a symmetry of y' = A y."""
    M = _system_matrix(A)
    if M.rows != Y.n:
        raise DimensionMismatch(f"system of size {M.rows} and field on C^{Y.n}")
    return Y.diff_x() + lie_bracket(VerticalField.linear(M), Y)


def is_symmetry(A, Y):
    return bracket_with_X(A, Y).is_zero()


def homogeneous_components(Y):
    """Nonzero homogeneous components of Y in increasing degree."""
    if Y.is_zero():
        return []
    return [part for part in (Y.homogeneous_part(r) for r in range(Y.degree + 1)) if not part.is_zero()]


def vertical_representative(Y, A):
    """Y - (Y x) X, whose d/dx component vanishes by construction."""
    M = _system_matrix(A)
    if M.rows != Y.vertical.n:
        raise DimensionMismatch(f"system of size {M.rows} and field on C^{Y.vertical.n}")
    return Y.vertical - VerticalField.linear(M).multiply(Y.xcomp)


def maclaurin_truncate(num, den, order):
    """Homogeneous components up to ``order`` of the y-expansion of num/den.

    Only nonzero components are returned, in increasing degree.
    """
    c0 = den.constant_term()
    if not c0:
        raise VanishingConstantTerm("denominator vanishes at y = 0; the polar set contains the curve")
    inv = c0.inverse()
    u = (den - MvPoly.constant(den.n, c0)).scale(inv)
    # 1/den = inv * sum_k (-u)^k, u has no constant term so (-u)^k starts at degree k
    series = MvPoly.constant(den.n, 1)
    power = MvPoly.constant(den.n, 1)
    for _ in range(order):
        power = (power * (-u)).truncate(order)
        if power.is_zero():
            break
        series = series + power
    series = series.scale(inv)
    expanded = VerticalField([(c * series).truncate(order) for c in num.components])
    return homogeneous_components(expanded)


def monomials(n, m):
    """Exponent vectors of degree m in n variables, lexicographically decreasing."""
    out = []
    for combo in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


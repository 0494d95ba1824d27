"""Dense univariate polynomials over Q.

A polynomial is stored as an integer coefficient tuple (lowest degree first)
over one positive common denominator, normalized so the two share no common
factor.  ``coeffs`` exposes the rational coefficients.  Keeping the hot paths
in machine-friendly integers is several times faster than ``Fraction``
arithmetic; gcds use the primitive polynomial remainder sequence.
"""

from fractions import Fraction
from math import gcd, isqrt

from ..errors import DivisionByZero, ZeroPolynomialError

_ZERO = Fraction(0)


def _lcm(a, b):
    return a // gcd(a, b) * b


def _content(ints):
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _primitive(ints):
    g = _content(ints)
    if ints and ints[-1] < 0:
        g = -g
    if g in (0, 1):
        return list(ints)
    return [v // g for v in ints]


def _prem(A, B):
    """Remainder of a gcd-scaled pseudo-division of integer lists (B nonzero)."""
    A = list(A)
    db = len(B) - 1
    L = B[-1]
    for k in range(len(A) - 1 - db, -1, -1):
        c = A[k + db]
        if not c:
            continue
        g = gcd(c, L)
        mult = L // g
        coef = c // g
        if mult != 1:
            for i in range(k + db):
                A[i] *= mult
        for j in range(db):
            A[k + j] -= coef * B[j]
        A[k + db] = 0
    n = db
    while n and not A[n - 1]:
        n -= 1
    return A[:n]


def _kron_mul(a, b):
    """Product of integer coefficient lists by Kronecker substitution."""
    k = (max(abs(v) for v in a).bit_length() + max(abs(v) for v in b).bit_length()
         + min(len(a), len(b)).bit_length() + 2)
    A = 0
    for v in reversed(a):
        A = (A << k) + v
    B = 0
    for v in reversed(b):
        B = (B << k) + v
    C = A * B
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        v = C & mask
        C >>= k
        if v >= half:
            v -= 1 << k
            C += 1
        out.append(v)
    return out


class UniPoly:
    __slots__ = ("_ints", "_den", "_coeffs", "_hash")

    def __init__(self, coeffs=()):
        fr = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        d = 1
        for c in fr:
            if c.denominator != 1:
                d = _lcm(d, c.denominator)
        ints = [c.numerator * (d // c.denominator) for c in fr]
        self._set(ints, d)

    def _set(self, ints, d):
        n = len(ints)
        while n and not ints[n - 1]:
            n -= 1
        if n != len(ints):
            ints = ints[:n]
        if not n:
            d = 1
        else:
            if d < 0:
                ints = [-v for v in ints]
                d = -d
            if d != 1:
                g = gcd(d, _content(ints))
                if g != 1:
                    ints = [v // g for v in ints]
                    d //= g
        self._ints = tuple(ints)
        self._den = d
        self._coeffs = None
        self._hash = None

    @classmethod
    def _make(cls, ints, d=1):
        p = object.__new__(cls)
        p._set(ints, d)
        return p

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._make([c.numerator], c.denominator)

    @classmethod
    def x(cls):
        return X

    @classmethod
    def monomial(cls, k, c=1):
        c = Fraction(c)
        return cls._make([0] * k + [c.numerator], c.denominator)

    @classmethod
    def from_roots(cls, roots):
        p = ONE
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @classmethod
    def from_ints(cls, ints, den=1):
        return cls._make(list(ints), den)

    # -- basic queries -------------------------------------------------

    @property
    def coeffs(self):
        if self._coeffs is None:
            d = self._den
            self._coeffs = tuple(Fraction(v, d) for v in self._ints)
        return self._coeffs

    @property
    def ints(self):
        return self._ints

    @property
    def den(self):
        return self._den

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self._ints) - 1

    def is_zero(self):
        return not self._ints

    def is_constant(self):
        return len(self._ints) <= 1

    def lc(self):
        return Fraction(self._ints[-1], self._den) if self._ints else _ZERO

    def __getitem__(self, k):
        return Fraction(self._ints[k], self._den) if 0 <= k < len(self._ints) else _ZERO

    def __bool__(self):
        return bool(self._ints)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._den == other._den and self._ints == other._ints
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ints, self._den))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.to_text()})"

    # -- ring operations -----------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._ints, other._ints
        if not b:
            return self
        if not a:
            return other
        da, db = self._den, other._den
        if da == db:
            ma = mb = 1
            d = da
        else:
            g = gcd(da, db)
            ma, mb = db // g, da // g
            d = da * ma
        if len(a) >= len(b):
            out = [v * ma for v in a] if ma != 1 else list(a)
            for i, v in enumerate(b):
                out[i] += v * mb
        else:
            out = [v * mb for v in b] if mb != 1 else list(b)
            for i, v in enumerate(a):
                out[i] += v * ma
        return UniPoly._make(out, d)

    __radd__ = __add__

    def __neg__(self):
        p = object.__new__(UniPoly)
        p._ints = tuple(-v for v in self._ints)
        p._den = self._den
        p._coeffs = None
        p._hash = None
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            if isinstance(other, int):
                return UniPoly._make([v * other for v in self._ints], self._den)
            num, den = other.numerator, other.denominator
            return UniPoly._make([v * num for v in self._ints], self._den * den)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._ints, other._ints
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            b0 = b[0]
            out = [v * b0 for v in a]
        elif len(b) > 12:
            out = _kron_mul(a, b)
        else:
            out = [0] * (len(a) + len(b) - 1)
            for j, bj in enumerate(b):
                if bj:
                    for i, ai in enumerate(a):
                        out[i + j] += ai * bj
        return UniPoly._make(out, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * Fraction(c)

    def divmod(self, other):
        B = other._ints
        if not B:
            raise DivisionByZero(self, other)
        A = list(self._ints)
        db = len(B) - 1
        if len(A) - 1 < db:
            return ZERO, self
        L = B[-1]
        q = [0] * (len(A) - db)
        scale = 1
        for k in range(len(A) - 1 - db, -1, -1):
            c = A[k + db]
            if not c:
                continue
            g = gcd(c, L)
            mult = L // g
            coef = c // g
            if mult != 1:
                for i in range(k + db):
                    A[i] *= mult
                for i in range(k + 1, len(q)):
                    q[i] *= mult
                scale *= mult
            q[k] = coef
            for j in range(db):
                A[k + j] -= coef * B[j]
            A[k + db] = 0
        # scale * self.ints = q * other.ints + r
        da = self._den * scale
        quo = UniPoly._make(q, da)
        if other._den != 1:
            quo = quo * other._den
        return quo, UniPoly._make(A[:db], da)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"{other!r} does not divide {self!r}")
        return q

    def monic(self):
        a = self._ints
        if not a:
            return self
        L = a[-1]
        if L == self._den:
            return self
        if L < 0:
            return UniPoly._make([-v for v in a], -L)
        return UniPoly._make(list(a), L)

    def derivative(self):
        a = self._ints
        return UniPoly._make([k * a[k] for k in range(1, len(a))], self._den)

    def __call__(self, x):
        a = self._ints
        if isinstance(x, UniPoly):
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, int):
            acc = 0
            for v in reversed(a):
                acc = acc * x + v
            return Fraction(acc, self._den)
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qp = 1
        for v in reversed(a):
            acc = acc * p + v * qp
            qp *= q
        # acc = q^deg * sum v_i x^i
        return Fraction(acc, self._den * (qp // q if a else 1))

    def shift(self, a):
        """Return p(x + a)."""
        a = Fraction(a)
        if not a or len(self._ints) <= 1:
            return self
        c = list(self._ints)
        n = len(c)
        if a.denominator == 1:
            t = a.numerator
            for i in range(n):
                for j in range(n - 2, i - 1, -1):
                    c[j] += t * c[j + 1]
            return UniPoly._make(c, self._den)
        # p(x + u/v): shift v^deg p(x/v) ... via scaled integers
        u, v = a.numerator, a.denominator
        deg = n - 1
        # q(z) = p(z/v) * v^deg has integer coefficients c_i v^(deg-i)
        qc = [c[i] * v ** (deg - i) for i in range(n)]
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                qc[j] += u * qc[j + 1]
        # q(z + u) with z = v x gives v^deg p(x + u/v)
        out = [qc[i] * v ** i for i in range(n)]
        return UniPoly._make(out, self._den * v ** deg)

    def compose(self, q):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def reverse(self, n=None):
        """x^n p(1/x), with n defaulting to the degree."""
        if n is None:
            n = self.degree
        c = list(self._ints) + [0] * (n + 1 - len(self._ints))
        return UniPoly._make(list(reversed(c[: n + 1])), self._den)

    # -- integer views -------------------------------------------------

    def denominator_lcm(self):
        return self._den

    def integer_coeffs(self):
        """Primitive integer coefficient list of a rational multiple, positive lc."""
        return _primitive(self._ints)

    def height_bits(self):
        return max((abs(v).bit_length() for v in self._ints), default=0) + self._den.bit_length()

    # -- text ----------------------------------------------------------

    def to_text(self, var="x"):
        if not self._ints:
            return "0"
        parts = []
        coeffs = self.coeffs
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mon = var if k == 1 else f"{var}^{k}"
                body = mon if a == 1 else f"{a}*{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO = UniPoly._make([], 1)
ONE = UniPoly._make([1], 1)
X = UniPoly._make([0, 1], 1)


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    A, B = a._ints, b._ints
    if not A:
        return b.monic()
    if not B:
        return a.monic()
    if len(A) == 1 or len(B) == 1:
        return ONE
    if len(A) < len(B):
        A, B = B, A
    A = _primitive(A)
    B = _primitive(B)
    while len(B) > 1:
        R = _prem(A, B)
        if not R:
            return UniPoly._make(B, B[-1]) if B[-1] > 0 else UniPoly._make([-v for v in B], -B[-1])
        A, B = B, _primitive(R)
    return ONE


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1._ints:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0._ints:
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a, b):
    if not a._ints or not b._ints:
        return ZERO
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def squarefree_decomposition(p):
    """Yun's algorithm.

    Returns ``[(f_i, m_i), ...]`` with the f_i monic, squarefree, pairwise
    coprime and the multiplicities strictly increasing, such that
    ``p == p.lc() * prod(f_i ** m_i)``.
    """
    if not p._ints:
        raise ZeroPolynomialError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        if f.degree > 0:
            out.append((f, i))
        i += 1
    return out


def squarefree_part(p):
    if not p._ints:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    return p.monic().exact_div(poly_gcd(p, p.derivative()))


def _cauchy_bound(ints):
    lead = abs(ints[-1])
    m = max(abs(v) for v in ints[:-1]) if len(ints) > 1 else 0
    return 1 + -(-m // lead)


def integer_roots(p):
    """Distinct integer roots of p in ascending order."""
    if not p._ints:
        raise ZeroPolynomialError("integer roots of the zero polynomial")
    ints = p.integer_coeffs()
    roots = []
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.append(0)
        ints = ints[k:]
    if len(ints) <= 1:
        return roots
    if len(ints) == 2:
        if ints[0] % ints[1] == 0:
            roots.append(-ints[0] // ints[1])
        return sorted(set(roots))
    sqf = squarefree_part(UniPoly.from_ints(ints)).integer_coeffs()
    bound = _cauchy_bound(sqf)
    found = _hensel_integer_roots(sqf, bound)
    if found is None:
        found = [r for cand in _candidate_divisors(sqf[0], bound) for r in (cand, -cand)
                 if _int_eval(sqf, r) == 0]
    return sorted(set(roots + found))


def _hensel_integer_roots(ints, bound, max_prime=2000):
    """Integer roots of a squarefree integer polynomial by lifting roots mod a small prime.

    Picks a prime q not dividing the leading coefficient at which every root
    of ints mod q is simple, lifts each root by Newton iteration until the
    modulus exceeds 2*bound, and keeps the lifts that are exact roots.
    Returns None when no usable prime is found below max_prime.
    """
    dints = [i * c for i, c in enumerate(ints)][1:]
    q = 2
    while q < max_prime:
        q += 1
        if any(q % f == 0 for f in range(2, isqrt(q) + 1)) or ints[-1] % q == 0:
            continue
        rs = [r for r in range(q) if _int_eval(ints, r) % q == 0]
        if any(_int_eval(dints, r) % q == 0 for r in rs):
            continue
        out = []
        for r in rs:
            mod = q
            while mod <= 2 * bound:
                mod = mod * mod
                r = (r - _int_eval(ints, r) * pow(_int_eval(dints, r), -1, mod)) % mod
            if r > mod // 2:
                r -= mod
            if abs(r) <= bound and _int_eval(ints, r) == 0:
                out.append(r)
        return out
    return None


def _candidate_divisors(n, bound):
    n = abs(n)
    if bound * bound <= n:
        return [i for i in range(1, bound + 1) if n % i == 0]
    lim = isqrt(n)
    out = set()
    for i in range(1, lim + 1):
        if n % i == 0:
            out.add(i)
            if n // i <= bound:
                out.add(n // i)
    return sorted(out)


def _int_eval(ints, r):
    acc = 0
    for c in reversed(ints):
        acc = acc * r + c
    return acc


def rational_roots(p):
    """Distinct rational roots of p in ascending order."""
    if not p._ints:
        raise ZeroPolynomialError("rational roots of the zero polynomial")
    ints = p.integer_coeffs()
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    roots = [Fraction(0)] if k else []
    ints = ints[k:]
    deg = len(ints) - 1
    if deg <= 0:
        return roots
    lead = ints[-1]
    # roots of p are (roots of the monic integer g(y) = lead^(deg-1) p(y/lead)) / lead
    g = [c * lead ** (deg - 1 - i) for i, c in enumerate(ints[:-1])] + [1]
    for r in integer_roots(UniPoly(g)):
        roots.append(Fraction(r, lead))
    return sorted(set(roots))

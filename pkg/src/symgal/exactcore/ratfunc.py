"""Elements of Q(x) in canonical form: gcd(num, den) = 1 and den monic."""

from fractions import Fraction

from ..errors import DivisionByZero
from .poly import ONE, ZERO, UniPoly, poly_gcd


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=ONE):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num)
        if not isinstance(den, UniPoly):
            den = UniPoly.const(den)
        if not den._ints:
            raise DivisionByZero(num, den)
        if not num._ints:
            num, den = ZERO, ONE
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def const(cls, c):
        return cls._raw(UniPoly.const(c), ONE)

    @classmethod
    def from_poly(cls, p):
        return cls._raw(p, ONE)

    @classmethod
    def x(cls):
        return cls._raw(UniPoly.x(), ONE)

    # -- queries -------------------------------------------------------

    def is_zero(self):
        return not self.num._ints

    def __bool__(self):
        return bool(self.num._ints)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self):
        return self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, UniPoly):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.to_text()})"

    def __str__(self):
        return self.to_text()

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        if isinstance(other, UniPoly):
            return RatFunc._raw(other, ONE)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a._ints:
            return other
        if not c._ints:
            return self
        if b.degree == 0 and d.degree == 0:
            return RatFunc._raw(a + c, ONE)
        if d.degree == 0:
            return RatFunc._raw(a + c * b, b)
        if b.degree == 0:
            return RatFunc._raw(a * d + c, d)
        if b == d:
            t = a + c
            if not t._ints:
                return ZERO_RF
            g = poly_gcd(t, b)
            if g.degree > 0:
                return RatFunc._raw(t.exact_div(g), b.exact_div(g))
            return RatFunc._raw(t, b)
        g = poly_gcd(b, d)
        if g.degree == 0:
            return RatFunc._raw(a * d + c * b, b * d)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        t = a * d1 + c * b1
        if not t._ints:
            return ZERO_RF
        g2 = poly_gcd(t, g)
        if g2.degree > 0:
            t = t.exact_div(g2)
            g = g.exact_div(g2)
        return RatFunc._raw(t, b1 * d1 * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

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
                return ZERO_RF
            return RatFunc._raw(self.num * Fraction(other), self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a._ints or not c._ints:
            return ZERO_RF
        if b.degree == 0 and d.degree == 0:
            return RatFunc._raw(a * c, ONE)
        if d.degree > 0 and a.degree > 0:
            g1 = poly_gcd(a, d)
            if g1.degree > 0:
                a = a.exact_div(g1)
                d = d.exact_div(g1)
        if b.degree > 0 and c.degree > 0:
            g2 = poly_gcd(c, b)
            if g2.degree > 0:
                c = c.exact_div(g2)
                b = b.exact_div(g2)
        # denominators are monic, so their product is monic
        return RatFunc._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num._ints:
            raise DivisionByZero(ONE_RF, self)
        lc = self.num.lc()
        inv = 1 / lc
        return RatFunc._raw(self.den * inv, self.num * inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num._ints:
            raise DivisionByZero(self, other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def derivative(self):
        n, d = self.num, self.den
        if d.degree == 0:
            return RatFunc._raw(n.derivative(), ONE)
        # (n/d)' = (n'd - nd')/d^2; cancel via g = gcd(d, d')
        dd = d.derivative()
        g = poly_gcd(d, dd)
        d1 = d.exact_div(g)
        t = n.derivative() * d1 - n * dd.exact_div(g)
        return RatFunc(t, d1 * d)

    def __call__(self, x0):
        den = self.den(x0)
        if not den:
            raise DivisionByZero(self.num(x0), den)
        return self.num(x0) / den

    def shift(self, a):
        return RatFunc._raw(self.num.shift(a), self.den.shift(a))

    def to_text(self, var="x"):
        if self.den.degree == 0:
            return self.num.to_text(var)
        num = self.num.to_text(var)
        if sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = self.den.to_text(var)
        if sum(1 for c in self.den.coeffs if c) > 1:
            den = f"({den})"
        return f"{num}/{den}"


ZERO_RF = RatFunc._raw(ZERO, ONE)
ONE_RF = RatFunc._raw(ONE, ONE)


def ratfunc_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two rational functions."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfunc_derivative(f):
    return f.derivative()


def rf_sum(terms):
    """Sum rational functions, grouping by denominator to limit gcd work."""
    groups = {}
    for t in terms:
        if not t.num._ints:
            continue
        acc = groups.get(t.den)
        groups[t.den] = t.num if acc is None else acc + t.num
    total = ZERO_RF
    for den, num in groups.items():
        if num._ints:
            total = total + (RatFunc._raw(num, den) if den.degree == 0 else RatFunc(num, den))
    return total

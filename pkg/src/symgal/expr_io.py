"""Parsing of rational-function expressions, system files and vector-field files.

Expression grammar (standard precedence, ``^`` binds tightest and is
right-associative, unary minus allowed)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)*
    atom    := INT | NAME | '(' expr ')'

Exponents must be literal nonnegative integers.  Offsets in error messages
are byte offsets into the UTF-8 encoding of the input.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ParseError, UnsupportedDenominator, ZeroDenominatorError
from .exactcore import Matrix, RatFunc
from .vfields import MvPoly, VerticalField

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()])")


class SystemFormatError(ParseError):
    pass


class SystemDimensionError(SystemFormatError, DimensionMismatch):
    pass


def _tokenize(text):
    tokens = []
    pos = 0
    end = len(text)
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, pos))
        pos = m.end()
    tokens.append(("end", None, end))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


class _Parser:
    """Recursive-descent/precedence parser evaluating into a caller-supplied algebra."""

    def __init__(self, text, algebra):
        if not isinstance(text, str):
            raise ParseError(f"expression must be a string, got {type(text).__name__}")
        self.text = text
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, _byte_offset(self.text, tok[2]))

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = self.alg.add(v, rhs) if op == "+" else self.alg.sub(v, rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                v = self.alg.mul(v, rhs)
            else:
                v = self.alg.div(v, rhs, _byte_offset(self.text, tok[2]))
        return v

    def unary(self):
        t = self.peek()
        if t[:2] == ("op", "-"):
            self.take()
            return self.alg.neg(self.unary())
        if t[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        start = self.peek()[2]
        base = self.atom()
        exps = []
        while self.peek()[:2] == ("op", "^"):
            self.take()
            t = self.take()
            if t[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", t)
            exps.append(t[1])
        if not exps:
            return base
        e = exps[-1]
        for k in reversed(exps[:-1]):
            if k > 1 and e > MAX_EXPONENT:
                break
            e = k ** e
        if e > MAX_EXPONENT:
            raise ParseError(f"exponent exceeds {MAX_EXPONENT}", _byte_offset(self.text, start))
        return self.alg.pow(base, e)

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return self.alg.const(t[1])
        if t[0] == "name":
            return self.alg.symbol(t[1], _byte_offset(self.text, t[2]))
        if t[:2] == ("op", "("):
            v = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return v
        if t[0] == "end":
            raise self.error("unexpected end of expression", t)
        raise self.error(f"unexpected token {t[1]!r}", t)


class _RatFuncAlgebra:
    def __init__(self, var):
        self.var = var

    def const(self, k):
        return RatFunc.const(k)

    def symbol(self, name, offset):
        if name != self.var:
            raise ParseError(f"unknown symbol {name!r}", offset)
        return RatFunc.x()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, k):
        return a ** k

    def div(self, a, b, offset):
        if b.is_zero():
            raise ZeroDenominatorError("denominator is the zero polynomial", offset)
        return a / b


def parse_ratfunc(text, var="x"):
    return _Parser(text, _RatFuncAlgebra(var)).parse()


def to_text(f, var="x"):
    return f.to_text(var)


# -- vector fields -------------------------------------------------------------

class _YFraction:
    """num/den with den either 1 or y-dependent (only when denominators are allowed)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den


class _FieldAlgebra:
    _YNAME = re.compile(r"y([1-9][0-9]*)$")

    def __init__(self, n, var, allow_denominators):
        self.n = n
        self.var = var
        self.allow = allow_denominators

    def const(self, k):
        return _YFraction(MvPoly.constant(self.n, k))

    def symbol(self, name, offset):
        if name == self.var:
            return _YFraction(MvPoly.constant(self.n, RatFunc.x()))
        m = self._YNAME.match(name)
        if m and int(m.group(1)) <= self.n:
            return _YFraction(MvPoly.var(self.n, int(m.group(1)) - 1))
        raise ParseError(f"unknown symbol {name!r}", offset)

    def add(self, a, b):
        if a.den is None and b.den is None:
            return _YFraction(a.num + b.num)
        if a.den is None:
            return _YFraction(a.num * b.den + b.num, b.den)
        if b.den is None:
            return _YFraction(a.num + b.num * a.den, a.den)
        if a.den == b.den:
            return _YFraction(a.num + b.num, a.den)
        return _YFraction(a.num * b.den + b.num * a.den, a.den * b.den)

    def neg(self, a):
        return _YFraction(-a.num, a.den)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        num = a.num * b.num
        if a.den is None:
            return _YFraction(num, b.den)
        if b.den is None:
            return _YFraction(num, a.den)
        return _YFraction(num, a.den * b.den)

    def pow(self, a, k):
        return _YFraction(a.num ** k, None if a.den is None else a.den ** k)

    def div(self, a, b, offset):
        if b.num.is_zero():
            raise ZeroDenominatorError("denominator is the zero polynomial", offset)
        if b.den is None and b.num.is_y_free():
            return _YFraction(a.num.scale(b.num.constant_term().inverse()), a.den)
        if not self.allow:
            raise UnsupportedDenominator("division by an expression depending on y", offset)
        num = a.num if b.den is None else a.num * b.den
        den = b.num if a.den is None else a.den * b.num
        return _YFraction(num, den)


@dataclass(frozen=True)
class SystemSpec:
    """The system y' = A(x) y."""

    n: int
    A: Matrix
    var: str = "x"

    def __post_init__(self):
        if self.A.rows != self.n or self.A.cols != self.n:
            raise SystemDimensionError(f"A is {self.A.rows}x{self.A.cols}, expected {self.n}x{self.n}")

    def to_json_obj(self):
        return {"n": self.n, "var": self.var,
                "A": [[e.to_text(self.var) for e in row] for row in self.A.to_rows()]}

    def denominators(self):
        return [e.den for e in self.A.entries]


@dataclass
class FieldSpec:
    """A polynomial vector field read from a file.

    ``denominator`` is None for polynomial fields; it is only set when
    y-dependent denominators were explicitly allowed.
    """

    n: int
    field: VerticalField
    denominator: MvPoly = None
    var: str = "x"

    @property
    def components(self):
        return list(self.field.components)


def _load_json(text):
    if isinstance(text, (dict, list)):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"invalid JSON: {exc.msg}", exc.pos) from None


def _expr_text(e, where):
    if isinstance(e, bool):
        raise SystemFormatError("expected an expression string", location=where)
    if isinstance(e, int):
        return str(e)
    if not isinstance(e, str):
        raise SystemFormatError("expected an expression string", location=where)
    return e


def _read_n(doc):
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SystemFormatError("'n' must be a positive integer")
    return n


def parse_system(text):
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SystemFormatError("system file must be a JSON object")
    n = _read_n(doc)
    var = doc.get("var", "x")
    if not isinstance(var, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", var):
        raise SystemFormatError("'var' must be an identifier")
    rows = doc.get("A")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SystemFormatError("'A' must be a list of rows")
    if len(rows) != n or any(len(r) != n for r in rows):
        shape = f"{len(rows)}x{','.join(str(len(r)) for r in rows)}"
        raise SystemDimensionError(f"'A' has shape {shape}, expected {n}x{n}")
    entries = []
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            where = f"A[{i}][{j}]"
            src = _expr_text(e, where)
            try:
                entries.append(parse_ratfunc(src, var))
            except ParseError as exc:
                cls = type(exc) if isinstance(exc, ZeroDenominatorError) else SystemFormatError
                raise cls(exc.message, exc.offset, where) from None
    return SystemSpec(n, Matrix(n, n, entries), var)


def parse_vfield(text, allow_denominators=False):
    """Read ``{"n": int, "components": [expr, ...]}``.

    Components are polynomials in y1..yn with coefficients in Q(x).  When
    ``allow_denominators`` is set, y-dependent denominators are brought to a
    common denominator returned in ``FieldSpec.denominator``.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SystemFormatError("vector-field file must be a JSON object")
    n = _read_n(doc)
    var = doc.get("var", "x")
    comps = doc.get("components")
    if not isinstance(comps, list):
        raise SystemFormatError("'components' must be a list")
    if len(comps) != n:
        raise SystemDimensionError(f"{len(comps)} components for n = {n}")
    alg = _FieldAlgebra(n, var, allow_denominators)
    values = []
    for j, e in enumerate(comps):
        where = f"components[{j}]"
        src = _expr_text(e, where)
        try:
            values.append(_Parser(src, alg).parse())
        except ParseError as exc:
            cls = type(exc) if isinstance(exc, (ZeroDenominatorError, UnsupportedDenominator)) \
                else SystemFormatError
            raise cls(exc.message, exc.offset, where) from None
    dens = []
    for v in values:
        if v.den is not None and v.den not in dens:
            dens.append(v.den)
    if not dens:
        return FieldSpec(n, VerticalField([v.num for v in values]), None, var)
    common = dens[0]
    for d in dens[1:]:
        common = common * d
    nums = []
    for v in values:
        other = MvPoly.constant(n, 1)
        for d in dens:
            if d != v.den:
                other = other * d
        nums.append(v.num * other)
    return FieldSpec(n, VerticalField(nums), common, var)


def field_to_json_obj(Y, var="x"):
    return {"n": Y.n, "components": [c.to_text(var=var) for c in Y.components]}


def matrix_to_text_rows(M, var="x"):
    return [[_scalar_text(e, var) for e in row] for row in M.to_rows()]


def _scalar_text(e, var):
    if isinstance(e, RatFunc):
        return e.to_text(var)
    return str(Fraction(e))


def parse_matrix_text(text, var="x"):
    """Matrix given as JSON rows of expression strings or integers."""
    rows = _load_json(text)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SystemFormatError("matrix must be a non-empty JSON list of rows")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise SystemDimensionError("ragged matrix rows")
    out = []
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            out.append(parse_ratfunc(_expr_text(e, f"[{i}][{j}]"), var))
    return Matrix(len(rows), ncols, out)


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_report(report):
    """Canonical JSON for a GaloisReport (or an already plain report dict)."""
    obj = report.to_dict() if hasattr(report, "to_dict") else report
    return dumps(obj)


def parse_report(text):
    """Inverse of ``serialize_report``."""
    from .galois_report import GaloisReport

    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SystemFormatError("report must be a JSON object")
    try:
        return GaloisReport.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise SystemFormatError(f"malformed report: missing or bad field {exc}") from None


__all__ = [
    "SystemSpec", "FieldSpec", "SystemFormatError", "SystemDimensionError",
    "parse_ratfunc", "parse_system", "parse_vfield", "parse_matrix_text", "to_text",
    "field_to_json_obj", "matrix_to_text_rows", "dumps", "serialize_report", "parse_report",
]

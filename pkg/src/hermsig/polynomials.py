"""Exact univariate polynomials and rational functions over the rationals.

Coefficients are `fractions.Fraction` throughout; there is no floating point
anywhere. Polynomials are kept in canonical form (no trailing zero
coefficients), rational functions in lowest terms with monic denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Iterator, Union

from .errors import ParseError

Rational = Fraction

Scalar = Union[int, Fraction]


def _frac(v: Scalar) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients, canonical form."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        c = [_frac(v) for v in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    #### constructors

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, v: Scalar) -> "Polynomial":
        return cls((v,))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    #### basic queries

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return self._c[-1]

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    @property
    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"not a constant polynomial: {self}")
        return self._c[0] if self._c else Fraction(0)

    #### arithmetic

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        o = _as_poly(other)
        n = max(len(self._c), len(o._c))
        return Polynomial(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-v for v in self._c)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        o = _as_poly(other)
        if not self._c or not o._c:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(o._c):
                    if b:
                        out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        o = _as_poly(other)
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        q = [Fraction(0)] * max(0, len(rem) - len(o._c) + 1)
        lead = o.leading
        while len(rem) >= len(o._c):
            c = rem[-1] / lead
            k = len(rem) - len(o._c)
            q[k] = c
            for i, b in enumerate(o._c):
                rem[k + i] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError(f"inexact polynomial division: {self} by {other}")
        return q

    def __call__(self, v: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * v + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self._c) if i > 0)

    def monic(self) -> "Polynomial":
        if self.is_zero or self.leading == 1:
            return self
        inv = 1 / self.leading
        return Polynomial(c * inv for c in self._c)

    def shift_compose_neg(self) -> "Polynomial":
        """p(-x)."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self._c))

    #### gcd family

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd, via a primitive integer remainder sequence."""
        a, b = self, _as_poly(other)
        if a.is_zero:
            return b.monic()
        if b.is_zero:
            return a.monic()
        ia = _primitive_int_coeffs(a)
        ib = _primitive_int_coeffs(b)
        if len(ia) < len(ib):
            ia, ib = ib, ia
        while ib:
            ia = _int_prem(ia, ib)
            _make_primitive(ia)
            ia, ib = ib, ia
        return Polynomial(ia).monic()

    def squarefree_part(self) -> "Polynomial":
        """Monic product of the distinct irreducible factors."""
        if self.is_zero:
            return self
        if self.degree == 0:
            return Polynomial.one()
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    def resultant(self, other: "Polynomial") -> Fraction:
        """res(self, other) via the Euclidean recursion."""
        f, g = self, _as_poly(other)
        if f.is_zero or g.is_zero:
            return Fraction(0)
        acc = Fraction(1)
        sign = 1
        while True:
            if g.degree == 0:
                return sign * acc * g.leading ** f.degree
            r = f % g
            if r.is_zero:
                # common factor unless f had degree 0 already
                return Fraction(0) if f.degree > 0 else sign * acc
            acc *= g.leading ** (f.degree - r.degree)
            if (f.degree * g.degree) % 2 == 1:
                sign = -sign
            f, g = g, r

    #### comparisons

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def _as_poly(v: "Polynomial | Scalar") -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial.constant(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Polynomial")


#### integer kernels shared with the Sturm machinery


def _primitive_int_coeffs(p: Polynomial) -> list[int]:
    """Integer coefficient list of a positive rational multiple of p, primitive."""
    if p.is_zero:
        return []
    den_lcm = 1
    for c in p.coefficients:
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coefficients]
    _make_primitive(ints)
    return ints


def _make_primitive(c: list[int]) -> None:
    """Divide an integer coefficient list by its content, in place."""
    g = 0
    for v in c:
        g = int_gcd(g, abs(v))
        if g == 1:
            return
    if g > 1:
        for i, v in enumerate(c):
            c[i] = v // g


def _int_prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials, sign-corrected to match rem(f, g).

    Returns r with sign(r(t)) == sign((f mod g)(t)) for all t.
    """
    if not g:
        raise ZeroDivisionError
    r = list(f)
    dg = len(g) - 1
    lead = g[-1]
    if len(f) < len(g):
        return r
    # r ends as lead^mults * rem(f, g); mults is counted, not predicted,
    # because intermediate leading coefficients may cancel and skip steps
    mults = 0
    while r and len(r) - 1 >= dg:
        c = r[-1]
        k = len(r) - 1 - dg
        r = [lead * v for v in r]
        mults += 1
        for i, b in enumerate(g):
            r[k + i] -= c * b
        while r and r[-1] == 0:
            r.pop()
    if lead < 0 and mults % 2 == 1:
        r = [-v for v in r]
    return r


#### text grammar: integer/rational literals, x, + - * / ^, parentheses


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = _format_fraction(mag)
        elif mag == 1:
            body = "x" if i == 1 else f"x^{i}"
        else:
            body = f"{_format_fraction(mag)}*x" + ("" if i == 1 else f"^{i}")
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def _format_fraction(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


class RationalFunction:
    """Quotient of polynomials, lowest terms, monic denominator."""

    __slots__ = ("_num", "_den")

    def __init__(self, num: Polynomial | Scalar, den: Polynomial | Scalar = 1):
        n = _as_poly(num)
        d = _as_poly(den)
        if d.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero:
            d = Polynomial.one()
        else:
            g = n.gcd(d)
            if g.degree > 0:
                n = n.exact_div(g)
                d = d.exact_div(g)
            lead = d.leading
            if lead != 1:
                inv = 1 / lead
                n = n * inv
                d = d * inv
        self._num = n
        self._den = d

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self._den.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial:
            raise ValueError(f"not a polynomial: {self}")
        return self._num  # denominator is monic constant, hence 1

    @property
    def is_constant(self) -> bool:
        return self._num.is_constant and self._den.is_constant

    def constant_value(self) -> Fraction:
        return self._num.constant_value() / self._den.constant_value()

    def __call__(self, v: Scalar) -> Fraction:
        dv = self._den(v)
        if dv == 0:
            raise ZeroDivisionError(f"pole at {v}")
        return self._num(v) / dv

    def __add__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self._num, self._den)

    def __sub__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return _as_rf(other) + (-self)

    def __mul__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction(self._num * o._num, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        o = _as_rf(other)
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self._num * o._den, self._den * o._num)

    def __rtruediv__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return _as_rf(other) / self

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(self._den, self._num) ** (-e)
        return RationalFunction(self._num ** e, self._den ** e)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = _as_rf(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_polynomial(self._num)
        return f"({format_polynomial(self._num)})/({format_polynomial(self._den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _as_rf(v: "RationalFunction | Polynomial | Scalar") -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    return RationalFunction(_as_poly(v))


#### parser

_TOKEN_CHARS = set("+-*/^()")


class _Tokenizer:
    def __init__(self, text: str, line: int | None = None):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        col = (self.pos if pos is None else pos) + 1
        return ParseError(msg, line=self.line, col=col)

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        ch = self.text[self.pos]
        if ch in _TOKEN_CHARS:
            return ch
        if ch.isdigit():
            return "num"
        if ch == "x":
            return "x"
        raise self.error(f"unexpected character {ch!r}")

    def take(self) -> str:
        kind = self.peek()
        if kind is None:
            raise self.error("unexpected end of expression")
        if kind == "num":
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return self.text[start:self.pos]
        self.pos += 1
        return kind


def parse_rational_function(text: str, line: int | None = None) -> RationalFunction:
    """Parse the element grammar; `/` is exact division of subexpressions."""
    tok = _Tokenizer(text, line)
    value = _parse_sum(tok)
    if tok.peek() is not None:
        raise tok.error("trailing input after expression")
    return value


def parse_polynomial(text: str, line: int | None = None) -> Polynomial:
    value = parse_rational_function(text, line)
    if not value.is_polynomial:
        raise ParseError("expected a polynomial, got a nonconstant denominator", line=line)
    return value.as_polynomial()


def _parse_sum(tok: _Tokenizer) -> RationalFunction:
    value = _parse_product(tok)
    while True:
        kind = tok.peek()
        if kind == "+":
            tok.take()
            value = value + _parse_product(tok)
        elif kind == "-":
            tok.take()
            value = value - _parse_product(tok)
        else:
            return value


def _parse_product(tok: _Tokenizer) -> RationalFunction:
    value = _parse_signed(tok)
    while True:
        kind = tok.peek()
        if kind == "*":
            tok.take()
            value = value * _parse_signed(tok)
        elif kind == "/":
            pos = tok.pos
            tok.take()
            divisor = _parse_signed(tok)
            if divisor.is_zero:
                raise tok.error("division by zero", pos)
            value = value / divisor
        else:
            return value


def _parse_signed(tok: _Tokenizer) -> RationalFunction:
    sign = 1
    while tok.peek() in ("+", "-"):
        if tok.take() == "-":
            sign = -sign
    value = _parse_power(tok)
    return value if sign > 0 else -value


def _parse_power(tok: _Tokenizer) -> RationalFunction:
    base = _parse_atom(tok)
    if tok.peek() == "^":
        tok.take()
        pos = tok.pos
        kind = tok.peek()
        if kind != "num":
            raise tok.error("exponent must be a nonnegative integer", pos)
        e = int(tok.take())
        return base ** e
    return base


def _parse_atom(tok: _Tokenizer) -> RationalFunction:
    kind = tok.peek()
    if kind == "num":
        return RationalFunction(Polynomial.constant(int(tok.take())))
    if kind == "x":
        tok.take()
        return RationalFunction(Polynomial.x())
    if kind == "(":
        tok.take()
        value = _parse_sum(tok)
        if tok.peek() != ")":
            raise tok.error("expected ')'")
        tok.take()
        return value
    raise tok.error("expected a number, 'x' or '('")


def iter_terms(p: Polynomial) -> Iterator[tuple[int, Fraction]]:
    """(degree, coefficient) pairs of the nonzero terms, ascending degree."""
    for i, c in enumerate(p.coefficients):
        if c:
            yield i, c


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic least common multiple."""
    if a.is_zero or b.is_zero:
        return Polynomial.zero()
    return (a * b).exact_div(a.gcd(b)).monic()


def interpolate(points: "list[tuple[Scalar, Scalar]]") -> Polynomial:
    """The polynomial of least degree through the given (node, value) pairs.

    Newton's divided differences; nodes must be pairwise distinct.
    """
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    n = len(points)
    # divided difference table, in place
    coeffs = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    result = Polynomial.zero()
    basis = Polynomial.one()
    for i in range(n):
        result = result + coeffs[i] * basis
        basis = basis * Polynomial((-xs[i], 1))
    return result

"""Exact scalars for the coefficient tower Q, Q(t) and their Gaussian extensions.

Rationals are plain :class:`fractions.Fraction` values.  Univariate rational
functions and Gaussian scalars are immutable classes defined here; all three
interoperate through the usual arithmetic operators, so matrices may freely mix
them.  Every value is kept in canonical form, which makes ``==`` structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, PoleAtPoint, ScalarSyntaxError

Poly = tuple  # tuple of Fractions, constant term first, no trailing zeros


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q
# ---------------------------------------------------------------------------

def _ptrim(p: Iterable) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, _pneg(b))


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _pscale(a: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        r = list(_ptrim(r))
    return _ptrim(q), _ptrim(r)


def _pmonic(a: Poly) -> Poly:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts: list[str] = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if deg == 0:
            body = str(a)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Q(t)
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(t) stored as numerator/denominator with monic, coprime denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), *, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            return
        n = _ptrim(Fraction(c) for c in num)
        d = _ptrim(Fraction(c) for c in den)
        if not d:
            raise DivisionByZero("rational function with zero denominator")
        if not n:
            self.num, self.den = (), (Fraction(1),)
            return
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        lead = d[-1]
        if lead != 1:
            n = _pscale(n, 1 / lead)
            d = _pscale(d, 1 / lead)
        self.num, self.den = n, d

    # constructors --------------------------------------------------------
    @classmethod
    def t(cls) -> "RationalFunction":
        return cls((0, 1), _canonical=False)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls(((c,) if c else ()), (Fraction(1),), _canonical=True)

    # predicates ----------------------------------------------------------
    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den)
        return RationalFunction(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RationalFunction()
        if len(self.den) == 1 and len(o.den) == 1:
            return RationalFunction(_pmul(self.num, o.num), (Fraction(1),), _canonical=True)
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(t)")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            if len(self.den) != 1:
                return False
            if not self.num:
                return other == 0
            return len(self.num) == 1 and self.num[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    # evaluation ----------------------------------------------------------
    def specialize(self, q) -> Fraction:
        q = Fraction(q)
        d = _peval(self.den, q)
        if d == 0:
            raise PoleAtPoint(f"{self} has a pole at t = {q}")
        return _peval(self.num, q) / d

    def __str__(self) -> str:
        if len(self.den) == 1:
            return _pstr(self.num)
        return f"({_pstr(self.num)})/({_pstr(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# ---------------------------------------------------------------------------
# Gaussian extension F(i)
# ---------------------------------------------------------------------------

class Gaussian:
    """``re + im*i`` with ``re`` and ``im`` in Q or Q(t)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _base(re)
        self.im = _base(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return Gaussian(other, 0)
        return None

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return Gaussian(self.re * other, self.im * other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            return Gaussian(a * c, a * d)
        if not d:
            return Gaussian(a * c, b * c)
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Gaussian":
        n = self.norm()
        if not n:
            raise DivisionByZero("inverse of zero in F(i)")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            if not other:
                raise DivisionByZero("division by zero")
            return Gaussian(_div(self.re, other), _div(self.im, other))
        if not isinstance(other, Gaussian):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, RationalFunction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = _imag_str(self.im)
        if not self.re:
            return im
        if im.startswith("-"):
            return f"{self.re} - {im[1:]}"
        return f"{self.re} + {im}"

    def __repr__(self) -> str:
        return f"Gaussian({self})"


Scalar = Union[int, Fraction, RationalFunction, Gaussian]


def _base(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, RationalFunction)):
        return x
    raise TypeError(f"not a base-field scalar: {x!r}")


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _imag_str(b) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    if isinstance(b, Fraction) or b.is_constant():
        return f"{b}*i"
    return f"({b})*i"


I = Gaussian(0, 1)
T = RationalFunction.t()


# ---------------------------------------------------------------------------
# generic helpers
# ---------------------------------------------------------------------------

def field_arith(a, b, op: str):
    """Apply ``op`` in {'add','sub','mul','div'} exactly."""
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero(f"{a} / 0")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def as_scalar(x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, RationalFunction, Gaussian)):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def conj(x):
    return x.conjugate() if isinstance(x, Gaussian) else x


def real_part(x):
    return x.re if isinstance(x, Gaussian) else x


def imag_part(x):
    return x.im if isinstance(x, Gaussian) else Fraction(0)


def is_parametric(x) -> bool:
    """True when ``x`` genuinely depends on t."""
    if isinstance(x, RationalFunction):
        return not x.is_constant()
    if isinstance(x, Gaussian):
        return is_parametric(x.re) or is_parametric(x.im)
    return False


def specialize(x, q):
    """Evaluate t at the rational ``q``; rationals pass through unchanged."""
    if isinstance(x, RationalFunction):
        return x.specialize(q)
    if isinstance(x, Gaussian):
        return Gaussian(specialize(x.re, q), specialize(x.im, q))
    return x


def normalize(x):
    """Collapse constant rational functions and real Gaussians to the smallest field."""
    if isinstance(x, Gaussian):
        if not x.im:
            return normalize(x.re)
        return Gaussian(normalize(x.re), normalize(x.im))
    if isinstance(x, RationalFunction) and x.is_constant():
        return x.constant_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


def format_scalar(x) -> str:
    return str(as_scalar(x))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _ScalarParser:
    """Recursive descent over ``expr := term (('+'|'-') term)*`` with ``*``, ``/``, ``^``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ScalarSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        if not self.text.strip():
            self.error("empty scalar")
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            value = self.term()
            if ch == "-":
                value = -value
        else:
            value = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() in ("*", "/") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    self.error("division by zero")
                value = _div(value, rhs)
        return value

    def power(self):
        value = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected integer exponent")
            k = int(self.text[start:self.pos])
            acc = Fraction(1)
            for _ in range(k):
                acc = acc * value
            value = acc
        return value

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch == "-":
            self.pos += 1
            return -self.atom()
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Fraction(int(self.text[start:self.pos]))
        if ch == "t":
            self.pos += 1
            return RationalFunction.t()
        if ch == "i":
            self.pos += 1
            return Gaussian(0, 1)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"(t^2 - 1)/(2*t + 3)"``, ``"1/2 + 3*i"`` and similar."""
    return normalize(_ScalarParser(text).parse())

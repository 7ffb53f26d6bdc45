"""Exact real numbers in towers of quadratic extensions of the rationals.

A :class:`Surd` is ``a + b*sqrt(d)`` where ``a``, ``b`` and ``d`` are themselves
exact numbers (``Fraction`` or ``Surd``) built only from radicands that sort
strictly below ``d``.  That recursive normal form is what lets values such as
``c(alpha)`` for a surd density, or the edge density of a neighbourhood
graphon, be handled without floating point.

Signs are decided exactly: for ``a + b*sqrt(d)`` with ``a`` and ``b`` of
opposite signs we compare ``a**2`` with ``b**2 * d`` one level down.  Decimal
values are only ever produced for display.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Number = Union[Fraction, "Surd"]

_TRIAL_LIMIT = 20_000


def _primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(limit + 1) if sieve[p]]


_PRIMES = _primes(_TRIAL_LIMIT)


def split_square(m: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``m == s*s*core``.

    ``core`` is squarefree unless ``m`` has a repeated prime factor above the
    trial-division limit, which only costs canonical form, never correctness.
    """
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0, 0
    root = math.isqrt(m)
    if root * root == m:
        return root, 1
    out, core = 1, 1
    for p in _PRIMES:
        if p * p > m:
            break
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out *= p ** (e // 2)
        if e % 2:
            core *= p
    root = math.isqrt(m)
    if root * root == m:
        out *= root
    else:
        core *= m
    return out, core


def as_number(x) -> Number:
    if isinstance(x, (Fraction, Surd)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_number(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact number")


def level(x: Number) -> int:
    return x._level if isinstance(x, Surd) else 0


def _key(x: Number) -> tuple:
    # total order on values used to order radicands; inner radicands always
    # have a smaller level than the radicand containing them
    if isinstance(x, Surd):
        return x._key
    return (0, x)


def _make(a: Number, b: Number, d: Number) -> Number:
    if not isinstance(b, Surd) and b == 0:
        return a
    return Surd(a, b, d)


class Surd:
    """``a + b*sqrt(d)``; build through arithmetic or :func:`sqrt`, not directly."""

    __slots__ = ("a", "b", "d", "_level", "_key", "_sign")

    def __init__(self, a: Number, b: Number, d: Number):
        self.a = a
        self.b = b
        self.d = d
        self._level = max(level(a), level(b), level(d) + 1)
        self._key = (self._level, _key(d), _key(a), _key(b))
        self._sign = None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return add(other, neg(self))

    def __mul__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return mul(self, inverse(other))

    def __rtruediv__(self, other):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        return mul(other, inverse(self))

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        return neg(self) if sign(self) < 0 else self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        return power(self, e)

    # -- comparison -------------------------------------------------------
    def _cmp(self, other) -> int:
        return sign(add(self, neg(as_number(other))))

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        # structural; a canonical Surd is irrational so never equals a Fraction
        return hash(self._key)

    def __bool__(self):
        return sign(self) != 0

    def __float__(self):
        return float(to_decimal(self, 20))

    def __repr__(self):
        return f"Surd({format_exact(self)!r})"

    def __str__(self):
        return format_display(self)


# -- field operations on Fraction | Surd --------------------------------------


def _outer(x: Number):
    return x.d if isinstance(x, Surd) else None


def _radicand_order(x: Number, y: Number) -> int:
    """Compare the outer radicands of x and y: -1, 0, 1 (a Fraction has none)."""
    dx, dy = _outer(x), _outer(y)
    if dx is None and dy is None:
        return 0
    if dx is None:
        return -1
    if dy is None:
        return 1
    kx, ky = _key(dx), _key(dy)
    if kx == ky:
        return 0
    return -1 if kx < ky else 1


def add(x: Number, y: Number) -> Number:
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        return x + y
    order = _radicand_order(x, y)
    if order == 0:
        return _make(add(x.a, y.a), add(x.b, y.b), x.d)
    if order > 0:
        return _make(add(x.a, y), x.b, x.d)
    return _make(add(x, y.a), y.b, y.d)


def neg(x: Number) -> Number:
    if isinstance(x, Surd):
        return Surd(neg(x.a), neg(x.b), x.d)
    return -x


def mul(x: Number, y: Number) -> Number:
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        return x * y
    order = _radicand_order(x, y)
    if order == 0:
        a = add(mul(x.a, y.a), mul(mul(x.b, y.b), x.d))
        b = add(mul(x.a, y.b), mul(x.b, y.a))
        return _make(a, b, x.d)
    if order > 0:
        if not isinstance(y, Surd) and y == 0:
            return Fraction(0)
        return _make(mul(x.a, y), mul(x.b, y), x.d)
    if not isinstance(x, Surd) and x == 0:
        return Fraction(0)
    return _make(mul(x, y.a), mul(x, y.b), y.d)


def inverse(y: Number) -> Number:
    if not isinstance(y, Surd):
        if y == 0:
            raise ZeroDivisionError("exact division by zero")
        return 1 / y
    a, b, d = y.a, y.b, y.d
    norm = add(mul(a, a), neg(mul(mul(b, b), d)))
    if sign(norm) == 0:
        # the conjugate vanishes, so sqrt(d) == a/b in value and y == 2a
        if sign(y) == 0:
            raise ZeroDivisionError("exact division by zero")
        return inverse(mul(Fraction(2), a))
    ninv = inverse(norm)
    return _make(mul(a, ninv), neg(mul(b, ninv)), d)


def div(x: Number, y: Number) -> Number:
    return mul(x, inverse(y))


def power(x: Number, e: int) -> Number:
    if e < 0:
        return power(inverse(x), -e)
    result: Number = Fraction(1)
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def sign(x: Number) -> int:
    if not isinstance(x, Surd):
        return (x > 0) - (x < 0)
    if x._sign is not None:
        return x._sign
    sa, sb = sign(x.a), sign(x.b)
    if sb == 0 or sign(x.d) == 0:
        s = sa
    elif sa == 0 or sa == sb:
        s = sb
    else:
        diff = sign(add(mul(x.a, x.a), neg(mul(mul(x.b, x.b), x.d))))
        s = sa if diff > 0 else (sb if diff < 0 else 0)
    x._sign = s
    return s


def is_zero(x: Number) -> bool:
    return sign(x) == 0


def compare(x, y) -> int:
    return sign(add(as_number(x), neg(as_number(y))))


def exact_abs(x: Number) -> Number:
    return neg(x) if sign(x) < 0 else x


# -- square roots -----------------------------------------------------------


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def try_sqrt(x: Number):
    """Nonnegative square root of ``x`` inside the field of ``x``, or None."""
    if sign(x) < 0:
        return None
    if not isinstance(x, Surd):
        return _rational_sqrt(x)
    a, b, d = x.a, x.b, x.d
    norm = add(mul(a, a), neg(mul(mul(b, b), d)))
    s = try_sqrt(norm)
    if s is None:
        return None
    half = Fraction(1, 2)
    for cand in (mul(add(a, s), half), mul(add(a, neg(s)), half)):
        p = try_sqrt(cand)
        if p is None or sign(p) == 0:
            continue
        q = div(b, mul(Fraction(2), p))
        y = _make(p, q, d)
        if sign(y) < 0:
            y = neg(y)
        if compare(mul(y, y), x) == 0:
            return y
    return None


def sqrt(x) -> Number:
    """Exact nonnegative square root, adjoining a new radicand when needed."""
    x = as_number(x)
    sx = sign(x)
    if sx < 0:
        raise ValueError("square root of a negative number")
    if sx == 0:
        return Fraction(0)
    if not isinstance(x, Surd):
        root = _rational_sqrt(x)
        if root is not None:
            return root
        s, core = split_square(x.numerator * x.denominator)
        return _make(Fraction(0), Fraction(s, x.denominator), Fraction(core))
    root = try_sqrt(x)
    if root is not None:
        return root
    return Surd(Fraction(0), Fraction(1), x)


# -- rounding and decimals ------------------------------------------------------


def _dec(x: Number, prec: int) -> Decimal:
    if isinstance(x, Surd):
        return _dec(x.a, prec) + _dec(x.b, prec) * _dec(x.d, prec).sqrt()
    return Decimal(x.numerator) / Decimal(x.denominator)


def to_decimal(x, digits: int = 12) -> Decimal:
    """Decimal approximation correct to ``digits`` significant digits."""
    x = as_number(x)
    if sign(x) == 0:
        return Decimal(0)
    if isinstance(x, Fraction):
        with localcontext() as ctx:  # a single correctly rounded division
            ctx.prec = digits
            return Decimal(x.numerator) / Decimal(x.denominator)
    prec = digits + 15 + 5 * level(x)
    while True:
        with localcontext() as ctx:
            ctx.prec = prec
            v1 = _dec(x, prec)
        with localcontext() as ctx:
            ctx.prec = 2 * prec
            v2 = _dec(x, 2 * prec)
        with localcontext() as ctx:
            ctx.prec = digits
            if +v1 == +v2 and v1 != 0:
                return +v2
        prec *= 2


def format_decimal(x, digits: int = 12) -> str:
    """Round-half-even to ``digits`` significant digits."""
    return format(to_decimal(x, digits), f".{digits}g")


def floor(x) -> int:
    x = as_number(x)
    if not isinstance(x, Surd):
        return math.floor(x)
    f = math.floor(to_decimal(x, 30))
    while compare(x, f) < 0:
        f -= 1
    while compare(x, f + 1) >= 0:
        f += 1
    return f


# -- text forms ---------------------------------------------------------------


def format_exact(x) -> str:
    """Compact form ``a/b+c/d*sqrt(e)``; nested parts are parenthesised."""
    x = as_number(x)
    if not isinstance(x, Surd):
        return str(x)
    a = format_exact(x.a)
    if isinstance(x.a, Surd):
        a = f"({a})"
    rad = format_exact(x.d)
    if isinstance(x.b, Surd):
        return f"{a}+({format_exact(x.b)})*sqrt({rad})"
    op = "-" if x.b < 0 else "+"
    return f"{a}{op}{abs(x.b)}*sqrt({rad})"


def format_display(x) -> str:
    """Readable form ``p/q + (r/s)*sqrt(u)``."""
    x = as_number(x)
    if not isinstance(x, Surd):
        return str(x)
    a = format_display(x.a)
    if isinstance(x.a, Surd):
        a = f"({a})"
    return f"{a} + ({format_display(x.b)})*sqrt({format_display(x.d)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


def parse_number(text: str) -> Number:
    """Parse integers, ``p/q`` and the surd forms printed by this module."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse number {text!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ValueError("empty number")
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"cannot parse number {text!r}")
        i += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = add(val, rhs if op == "+" else neg(rhs))
        return val

    def term():
        val = unary()
        while peek() in ("*", "/"):
            op = take()
            rhs = unary()
            val = mul(val, rhs) if op == "*" else div(val, rhs)
        return val

    def unary():
        if peek() == "-":
            take()
            return neg(unary())
        if peek() == "+":
            take()
            return unary()
        return atom()

    def atom():
        tok = take()
        if tok == "(":
            val = expr()
            take(")")
            return val
        if tok == "sqrt":
            take("(")
            val = expr()
            take(")")
            return sqrt(val)
        if tok.isdigit():
            return Fraction(int(tok))
        raise ValueError(f"cannot parse number {text!r}")

    value = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return value


def parse_rational(text: str) -> Fraction:
    value = parse_number(text)
    if isinstance(value, Surd):
        raise ValueError(f"{text!r} is not rational")
    return value

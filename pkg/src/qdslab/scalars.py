"""Exact scalars: rationals and rational functions in the level variable k.

Every numeric quantity in the package is either a ``Fraction``/``int`` or a
``RatFunc`` (an element of Q(k), where k stands for the shifted level
kappa = level + h^vee). Polynomial arithmetic is delegated to python-flint.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

import flint

Scalar = Union[int, Fraction, "RatFunc"]


class ScalarParseError(ValueError):
    pass


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    raise TypeError(f"not a rational: {x!r}")


def _from_fmpq(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RatFunc:
    """Element num/den of Q(k) with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([_to_fmpq(num)])
        if den is None:
            den = flint.fmpq_poly([1])
        elif not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly([_to_fmpq(den)])
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("RatFunc with zero denominator")
            if num == 0:
                den = flint.fmpq_poly([1])
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num // g
                        den = den // g
                lc = den.coeffs()[-1]
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def var(cls) -> "RatFunc":
        return cls(flint.fmpq_poly([0, 1]), _normalized=True)

    # --- predicates -------------------------------------------------------
    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        c = self.num.coeffs()
        return _from_fmpq(c[0]) if c else Fraction(0)

    def degree(self) -> int:
        """Cost measure for pivoting: total degree of numerator and denominator."""
        return max(self.num.degree(), 0) + self.den.degree()

    def __bool__(self):
        return self.num != 0

    # --- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc(flint.fmpq_poly([_to_fmpq(x)]), _normalized=True)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            return RatFunc(self.num + self.den * _to_fmpq(other), self.den, _normalized=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(flint.fmpq_poly([]), _normalized=True)
            return RatFunc(self.num * _to_fmpq(other), self.den, _normalized=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return RatFunc(self.num / _to_fmpq(other), self.den, _normalized=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __call__(self, value) -> Fraction:
        """Evaluate at a rational value of k."""
        v = _to_fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at k={value}")
        return _from_fmpq(self.num(v) / d)

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


KAPPA = RatFunc.var()


def is_zero(x: Scalar) -> bool:
    return not x


def is_integer(x: Scalar) -> bool:
    """Integral in the strict sense: for Q(k) elements, constant and integral."""
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, RatFunc):
        return x.is_constant() and x.constant().denominator == 1
    raise TypeError(f"unsupported scalar {x!r}")


def simplify(x: Scalar) -> Scalar:
    """Collapse constant rational functions to Fraction and integral Fractions to int."""
    if isinstance(x, RatFunc) and x.is_constant():
        x = x.constant()
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def evaluate(x: Scalar, kappa) -> Scalar:
    if isinstance(x, RatFunc):
        return simplify(x(kappa))
    return x


def pivot_cost(x: Scalar) -> int:
    if isinstance(x, RatFunc):
        return x.degree()
    return 0


# --- formatting and parsing ----------------------------------------------

def _fmt_q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_poly(p: flint.fmpq_poly) -> tuple[str, int]:
    """Return (text, common denominator) with integral coefficients in the text."""
    coeffs = [_from_fmpq(c) for c in p.coeffs()]
    if not coeffs:
        return "0", 1
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    terms = []
    for e in range(len(ints) - 1, -1, -1):
        c = ints[e]
        if c == 0:
            continue
        mono = "" if e == 0 else ("k" if e == 1 else f"k^{e}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(sign + body)
    return "".join(terms), den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def format_scalar(x: Scalar) -> str:
    """Canonical text form: '3/2', '-1', '(2*k-1)/3', '(k+1)/(k-2)'."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _fmt_q(x)
    if isinstance(x, RatFunc):
        if x.is_constant():
            return _fmt_q(x.constant())
        ntxt, nden = _fmt_poly(x.num)
        if x.den.degree() == 0:
            if nden == 1:
                return ntxt
            return f"({ntxt})/{nden}"
        # scale both polynomials to coprime integral coefficient vectors
        qs = [_from_fmpq(c) for c in x.num.coeffs()] + [_from_fmpq(c) for c in x.den.coeffs()]
        lcm = 1
        for c in qs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in qs]
        content = 0
        for v in ints:
            content = _gcd(content, abs(v))
        scale = _to_fmpq(Fraction(lcm, content))
        ntxt, _ = _fmt_poly(x.num * scale)
        dtxt, _ = _fmt_poly(x.den * scale)
        return f"({ntxt})/({dtxt})"
    raise TypeError(f"unsupported scalar {x!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(k)|(.))")


def parse_scalar(text: str) -> Scalar:
    """Parse the text form written by ``format_scalar`` (and ordinary arithmetic in k).

    Supports integers, the variable k, + - * / ^ and parentheses.
    """
    text = text.strip()
    if not text:
        raise ScalarParseError("empty scalar")
    tokens = []
    for m in _TOKEN.finditer(text):
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif var is not None:
            tokens.append(("var", None))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ScalarParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs:
                    raise ScalarParseError(f"division by zero in {text!r}")
                val = Fraction(val) / rhs if isinstance(val, int) else val / rhs
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ScalarParseError(f"exponent must be a literal integer in {text!r}")
            out = 1
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return val
        if kind == "var":
            return KAPPA
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ScalarParseError(f"unbalanced parentheses in {text!r}")
            return v
        raise ScalarParseError(f"malformed scalar {text!r}")

    value = expr()
    if pos != len(tokens):
        raise ScalarParseError(f"trailing input in {text!r}")
    return simplify(value)

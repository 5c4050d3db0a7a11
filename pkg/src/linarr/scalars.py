"""Exact scalars: rationals and number fields K = Q[t]/(m(t)).

Elements of K are stored as reduced residue polynomials in ``t`` with
:class:`fractions.Fraction` coordinates, so equality is coefficient-wise and
hashing is canonical.  Irreducibility of a user-supplied modulus is not
checked up front; a reducible modulus is detected the first time an
inversion hits a nontrivial common factor.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class FieldMismatchError(ValueError):
    def __init__(self) -> None:
        super().__init__("field mismatch")


class ReducibleModulusError(ArithmeticError):
    """Raised when inversion finds a nonconstant gcd with the modulus."""

    def __init__(self, factor: tuple[Fraction, ...]) -> None:
        self.factor = factor
        super().__init__(
            "reducible modulus witness: " + render_upoly(factor, "t")
        )


# --- dense univariate polynomials over Q, coefficients low -> high ---------

def _trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _umul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _trim(out)


def _usub(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] -= b
    return _trim(out)


def _udivmod(p: Sequence[Fraction], q: Sequence[Fraction]):
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("division by zero")
    r = list(_trim(p))
    if len(r) < len(q):
        return (), tuple(r)
    quo = [Fraction(0)] * (len(r) - len(q) + 1)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quo[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = list(_trim(r))
    return _trim(quo), tuple(r)


def _uxgcd(a, b):
    """Return (g, s) with g = gcd(a, b) monic and s*a = g (mod b)."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = (Fraction(1),), ()
    while r1:
        qt, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(qt, s1))
    lead = r0[-1]
    return tuple(c / lead for c in r0), tuple(c / lead for c in s0)


def render_upoly(coeffs: Sequence[Fraction], var: str = "t") -> str:
    """Render low->high coefficients as e.g. ``1/2*t^2 - 3``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _render_rational(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_render_rational(a)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --- number fields -----------------------------------------------------------

class NumberField:
    """K = Q[t]/(m(t)) for a monic modulus ``m`` given low -> high."""

    __slots__ = ("modulus", "degree", "_reduce", "_hash")

    def __init__(self, modulus: Iterable[Number]):
        mod = _trim(Fraction(c) for c in modulus)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = mod
        self.degree = len(mod) - 1
        n = self.degree
        # rows: coordinates of t^j mod m for 0 <= j <= 2n - 2
        table = []
        for j in range(max(2 * n - 1, 1)):
            if j < n:
                row = [Fraction(0)] * n
                row[j] = Fraction(1)
            else:
                prev = table[j - 1]
                top = prev[n - 1]
                row = [Fraction(0)] + prev[: n - 1]
                for i in range(n):
                    row[i] -= top * mod[i]
            table.append(row)
        self._reduce = tuple(tuple(r) for r in table)
        self._hash = hash(("NumberField", mod))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NumberField({render_upoly(self.modulus)})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def element(self, coords: Sequence[Number]) -> "FieldScalar":
        """Element from residue coordinates of any length (reduced mod m)."""
        cs = [Fraction(c) for c in coords]
        return FieldScalar(self, self._reduce_coeffs(cs))

    def _reduce_coeffs(self, cs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.degree
        if len(cs) <= n:
            return tuple(cs) + (Fraction(0),) * (n - len(cs))
        if len(cs) > len(self._reduce):
            _, r = _udivmod(cs, self.modulus)
            return tuple(r) + (Fraction(0),) * (n - len(r))
        out = list(cs[:n])
        for j in range(n, len(cs)):
            c = cs[j]
            if c:
                row = self._reduce[j]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def scalar(self, q: Number) -> "FieldScalar":
        return FieldScalar(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "FieldScalar":
        return self.scalar(0)

    def one(self) -> "FieldScalar":
        return self.scalar(1)

    def gen(self) -> "FieldScalar":
        """The class of ``t``."""
        return self.element([0, 1])

    def parse(self, text: str) -> "FieldScalar":
        return parse_scalar(text, self)

    def render(self) -> str:
        return render_upoly(self.modulus, "t")


QQ = NumberField([0, 1])


class FieldScalar:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.c = coords

    # coercion -------------------------------------------------------------
    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError()
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldScalar(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self.field.degree
        if n == 1:
            return FieldScalar(self.field, (self.c[0] * o.c[0],))
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return FieldScalar(self.field, self.field._reduce_coeffs(prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("division by zero")
        if self.field.degree == 1:
            return FieldScalar(self.field, (1 / self.c[0],))
        g, s = _uxgcd(self.c, self.field.modulus)
        if len(g) > 1:
            raise ReducibleModulusError(g)
        return self.field.element(s)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.c == other.c and self.field == other.field
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    @property
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __str__(self):
        return render_upoly(self.c, "t")

    def __repr__(self):
        return f"FieldScalar({self})"


def field_arith(a: FieldScalar, b: FieldScalar, op: str) -> FieldScalar:
    if a.field != b.field:
        raise FieldMismatchError()
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def field_invert(a: FieldScalar) -> FieldScalar:
    return a.inverse()


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[Fraction, ...]:
    num: tuple[Fraction, ...] = (Fraction(-1),) + (Fraction(0),) * (n - 1) + (Fraction(1),)
    for d in range(1, n):
        if n % d == 0:
            num, rem = _udivmod(num, _cyclotomic_coeffs(d))
            assert not rem
    return num


def make_cyclotomic(n: int) -> NumberField:
    """Field whose modulus is the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    return NumberField(_cyclotomic_coeffs(n))


# --- literal syntax ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        out.append(tok)
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over + - * / ^ ( ) with integers and ``t``."""

    def __init__(self, text: str, field: NumberField, variables: dict | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.variables = variables or {}
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str):
        raise ValueError(f"cannot parse {self.text!r}: {msg}")

    def parse(self):
        if not self.toks:
            self.error("empty literal")
        val = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r}")
        return val

    def expr(self):
        if self.peek() in ("+", "-"):
            sign = self.take()
            val = self.term()
            if sign == "-":
                val = -val
        else:
            val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if isinstance(rhs, FieldScalar):
                    if not rhs:
                        raise ZeroDivisionError("division by zero")
                    val = val * rhs.inverse()
                else:
                    val = val * self._invert_other(rhs)
        return val

    def _invert_other(self, rhs):
        # polynomial-valued operands only divide by nonzero constants
        c = rhs.constant_value() if hasattr(rhs, "constant_value") else None
        if c is None:
            self.error("division by a non-constant")
        return c.inverse()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                self.error("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            self.error("unexpected end")
        if tok.isdigit():
            return self.field.scalar(int(tok))
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                self.error("missing ')'")
            return val
        if tok == "-":
            return -self.atom()
        if tok == "t":
            return self.field.gen()
        if tok in self.variables:
            return self.variables[tok]
        self.error(f"unexpected {tok!r}")


def parse_scalar(text: str, field: NumberField = QQ) -> FieldScalar:
    """Parse ``p/q``, ``p`` or a polynomial in ``t`` such as ``1/2*t^2 - 3``."""
    return _Parser(text, field).parse()


def parse_modulus(text: str) -> NumberField:
    """Parse a monic polynomial in ``t`` into a :class:`NumberField`."""
    # parse with a formal field large enough not to reduce anything
    deg_guess = max([int(e) for e in re.findall(r"t\s*\^\s*(\d+)", text)] + [1])
    formal = NumberField([0] * (deg_guess + 1) + [1])
    value = _Parser(text, formal).parse()
    return NumberField(value.c)

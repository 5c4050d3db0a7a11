"""Sparse homogeneous polynomials over a number field, and derivations.

Polynomials live in K[x, y, z] (``nvars=3``) or K[y, z] (``nvars=2``).
Exponent vectors are tuples; division and leading terms use graded lex with
x > y > z, which for homogeneous polynomials is plain tuple order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .scalars import FieldScalar, NumberField, QQ, _Parser, _udivmod, _usub, _umul, _trim

VARNAMES = {3: ("x", "y", "z"), 2: ("y", "z")}


class NotDivisibleError(ArithmeticError):
    def __init__(self, msg: str = "not divisible"):
        super().__init__(msg)


@lru_cache(maxsize=None)
def monomials(nvars: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``k``, lexicographically descending."""
    if k < 0:
        return ()
    if nvars == 1:
        return ((k,),)
    out = []
    for e in range(k, -1, -1):
        for rest in monomials(nvars - 1, k - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, k: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, k))}


def dim_s(nvars: int, k: int) -> int:
    if k < 0:
        return 0
    return comb(k + nvars - 1, nvars - 1)


class HomPoly:
    """Immutable homogeneous polynomial; zero carries its own degree tag."""

    __slots__ = ("field", "nvars", "degree", "terms", "_hash")

    def __init__(self, field: NumberField, nvars: int, degree: int,
                 terms: Mapping[tuple[int, ...], FieldScalar] | None = None):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if sum(e) != degree or len(e) != nvars:
                        raise ValueError(f"exponent {e} does not match degree {degree}")
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, field: NumberField, nvars: int = 3, degree: int = 0) -> "HomPoly":
        return cls(field, nvars, degree)

    @classmethod
    def constant(cls, field: NumberField, value, nvars: int = 3) -> "HomPoly":
        c = value if isinstance(value, FieldScalar) else field.scalar(value)
        return cls(field, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: NumberField, i: int, nvars: int = 3) -> "HomPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, 1, {tuple(e): field.one()})

    @classmethod
    def linear(cls, coeffs: Sequence[FieldScalar]) -> "HomPoly":
        field = coeffs[0].field
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, nvars, 1, terms)

    @classmethod
    def monomial(cls, field: NumberField, exp: tuple[int, ...], coeff=None) -> "HomPoly":
        c = field.one() if coeff is None else coeff
        return cls(field, len(exp), sum(exp), {exp: c})

    @classmethod
    def from_vector(cls, field: NumberField, nvars: int, degree: int,
                    vec: Sequence[FieldScalar]) -> "HomPoly":
        return cls(field, nvars, degree, dict(zip(monomials(nvars, degree), vec)))

    # basic protocol ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.nvars != other.nvars or self.field != other.field:
            return False
        if not self.terms and not other.terms:
            return self.degree == other.degree
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.degree, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "HomPoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    # arithmetic --------------------------------------------------------------
    def __add__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return HomPoly(self.field, self.nvars, self.degree, terms)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.field, self.nvars, self.degree,
                       {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HomPoly":
        if not isinstance(c, FieldScalar):
            c = self.field.scalar(c)
        if not c:
            return HomPoly(self.field, self.nvars, self.degree)
        return HomPoly(self.field, self.nvars, self.degree,
                       {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            self._check(other)
            deg = self.degree + other.degree
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = c1 * c2
                    s = out.get(e)
                    out[e] = v if s is None else s + v
            return HomPoly(self.field, self.nvars, deg, out)
        if isinstance(other, (FieldScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (FieldScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "HomPoly":
        result = HomPoly.constant(self.field, 1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: tuple[int, ...]) -> "HomPoly":
        return HomPoly(self.field, self.nvars, self.degree + sum(exp),
                       {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    # calculus and evaluation ---------------------------------------------------
    def partial(self, i: int) -> "HomPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return HomPoly(self.field, self.nvars, self.degree - 1, out)

    def derivative(self, orders: Sequence[int]) -> "HomPoly":
        p = self
        for i, k in enumerate(orders):
            for _ in range(k):
                p = p.partial(i)
        return p

    def __call__(self, point: Sequence[FieldScalar]) -> FieldScalar:
        return self.eval(point)

    def eval(self, point: Sequence[FieldScalar]) -> FieldScalar:
        total = self.field.zero()
        powers = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = point[i] ** k
                        powers[i][k] = pw
                    term = term * pw
                    if not term:
                        break
            total = total + term
        return total

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, exp: tuple[int, ...]) -> FieldScalar:
        return self.terms.get(exp, self.field.zero())

    def constant_value(self) -> FieldScalar | None:
        if self.degree == 0 or not self.terms:
            return self.terms.get((0,) * self.nvars, self.field.zero())
        return None

    def to_vector(self) -> list[FieldScalar]:
        zero = self.field.zero()
        return [self.terms.get(m, zero) for m in monomials(self.nvars, self.degree)]

    def restrict_x0(self) -> "HomPoly":
        """The bivariate polynomial p(0, y, z)."""
        if self.nvars != 3:
            raise ValueError("restriction needs 3 variables")
        return HomPoly(self.field, 2, self.degree,
                       {e[1:]: c for e, c in self.terms.items() if e[0] == 0})

    def lift(self) -> "HomPoly":
        """Embed a polynomial in y, z into K[x, y, z]."""
        if self.nvars != 2:
            raise ValueError("lift needs 2 variables")
        return HomPoly(self.field, 3, self.degree,
                       {(0,) + e: c for e, c in self.terms.items()})

    def exact_div(self, q: "HomPoly") -> "HomPoly":
        return exact_div(self, q)

    def substitute(self, M) -> "HomPoly":
        return substitute_linear(self, M)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"HomPoly({render_poly(self)}; deg {self.degree})"


# --- free-function helpers -------------------------------------------------------

def poly_mul(p: HomPoly, q: HomPoly) -> HomPoly:
    return p * q


def partial(p: HomPoly, v: int | str) -> HomPoly:
    if isinstance(v, str):
        v = VARNAMES[p.nvars].index(v)
    return p.partial(v)


def eval_point(p: HomPoly, point) -> FieldScalar:
    coords = getattr(point, "coords", point)
    return p.eval(coords)


def exact_div(p: HomPoly, q: HomPoly) -> HomPoly:
    """Exact quotient p / q by long division, checked by re-multiplication."""
    p._check(q)
    if not q.terms:
        raise ZeroDivisionError("division by zero")
    deg = p.degree - q.degree
    if not p.terms:
        return HomPoly.zero(p.field, p.nvars, max(deg, 0))
    if deg < 0:
        raise NotDivisibleError()
    lq, cq = q.leading()
    inv = cq.inverse()
    rem = dict(p.terms)
    quo = {}
    qterms = list(q.terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        shift = tuple(a - b for a, b in zip(e, lq))
        if min(shift) < 0:
            raise NotDivisibleError()
        coef = c * inv
        quo[shift] = coef
        for eq, cv in qterms:
            t = tuple(a + b for a, b in zip(eq, shift))
            v = rem.get(t)
            nv = -(cv * coef) if v is None else v - cv * coef
            if nv:
                rem[t] = nv
            else:
                rem.pop(t, None)
    result = HomPoly(p.field, p.nvars, deg, quo)
    if result * q != p:
        raise NotDivisibleError()
    return result


def _det3(M) -> FieldScalar:
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def substitute_linear(p: HomPoly, M) -> HomPoly:
    """Return p(M X) where X is the column of variables."""
    if p.nvars != 3:
        raise ValueError("substitution needs 3 variables")
    field = p.field
    M = [[c if isinstance(c, FieldScalar) else field.scalar(c) for c in row] for row in M]
    if not _det3(M):
        raise ValueError("singular matrix")
    images = [HomPoly.linear(row) for row in M]
    cache: dict = {}

    def power(i: int, k: int) -> HomPoly:
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] ** k
        return cache[key]

    total = HomPoly.zero(field, 3, p.degree)
    for e, c in p.terms.items():
        term = HomPoly.constant(field, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def binary_distinct_roots(p: HomPoly) -> int:
    """Number of distinct projective roots of a nonzero binary form in y, z."""
    if p.nvars != 2 or not p.terms:
        raise ValueError("need a nonzero binary form")
    a = min(e[0] for e in p.terms)
    b = min(e[1] for e in p.terms)
    count = int(a > 0) + int(b > 0)
    # dehomogenize the cofactor at z = 1: univariate in y, low -> high
    deg = p.degree - a - b
    if deg == 0:
        return count
    coeffs = [p.field.zero()] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[0] - a] = c
    return count + _distinct_univariate(coeffs)


def _distinct_univariate(coeffs: list[FieldScalar]) -> int:
    deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
    g = _kgcd(coeffs, deriv)
    return (len(coeffs) - 1) - (len(g) - 1)


def _ktrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _kgcd(a, b):
    a, b = _ktrim(a), _ktrim(b)
    while b:
        a, b = b, _kmod(a, b)
    return a


def _kmod(a, b):
    r = list(a)
    lead_inv = b[-1].inverse()
    while len(r) >= len(b):
        c = r[-1] * lead_inv
        shift = len(r) - len(b)
        for i, v in enumerate(b):
            r[shift + i] = r[shift + i] - c * v
        r = _ktrim(r)
        if not r:
            break
    return r


# --- derivations -------------------------------------------------------------

class Derivation:
    """Homogeneous derivation sum_i comps[i] * d/dvar_i (3 or 2 variables)."""

    __slots__ = ("comps", "degree")

    def __init__(self, comps: Sequence[HomPoly], degree: int | None = None):
        comps = tuple(comps)
        if degree is None:
            nonzero = [c.degree for c in comps if c.terms]
            degree = nonzero[0] if nonzero else comps[0].degree
        fixed = []
        for c in comps:
            if not c.terms:
                c = HomPoly.zero(c.field, c.nvars, degree)
            elif c.degree != degree:
                raise ValueError("components must share a degree")
            fixed.append(c)
        self.comps = tuple(fixed)
        self.degree = degree

    @property
    def field(self) -> NumberField:
        return self.comps[0].field

    @property
    def nvars(self) -> int:
        return len(self.comps)

    @property
    def a(self):
        return self.comps[0]

    @property
    def b(self):
        return self.comps[-2]

    @property
    def c(self):
        return self.comps[-1]

    @classmethod
    def euler(cls, field: NumberField, nvars: int = 3) -> "Derivation":
        return cls([HomPoly.var(field, i, nvars) for i in range(nvars)], 1)

    @classmethod
    def constant(cls, coords: Sequence[FieldScalar]) -> "Derivation":
        field = coords[0].field
        return cls([HomPoly.constant(field, c, len(coords)) for c in coords], 0)

    @classmethod
    def zero(cls, field: NumberField, degree: int, nvars: int = 3) -> "Derivation":
        return cls([HomPoly.zero(field, nvars, degree)] * nvars, degree)

    @classmethod
    def from_vector(cls, field: NumberField, nvars: int, degree: int,
                    vec: Sequence[FieldScalar]) -> "Derivation":
        size = dim_s(nvars, degree)
        comps = [HomPoly.from_vector(field, nvars, degree, vec[i * size:(i + 1) * size])
                 for i in range(nvars)]
        return cls(comps, degree)

    def to_vector(self) -> list[FieldScalar]:
        out = []
        for c in self.comps:
            out.extend(c.to_vector())
        return out

    def apply(self, g: HomPoly) -> HomPoly:
        """D(g) = sum comps[i] * dg/dvar_i."""
        total = HomPoly.zero(g.field, g.nvars, self.degree + g.degree - 1)
        for i, c in enumerate(self.comps):
            if c.terms:
                total = total + c * g.partial(i)
        return total

    def kills(self, g: HomPoly) -> bool:
        return self.apply(g).is_zero()

    def evaluate(self, point) -> tuple[FieldScalar, ...]:
        coords = getattr(point, "coords", point)
        return tuple(c.eval(coords) for c in self.comps)

    def is_zero(self) -> bool:
        return all(not c.terms for c in self.comps)

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return Derivation([a + b for a, b in zip(self.comps, other.comps)], self.degree)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Derivation":
        return Derivation([p.scale(c) for p in self.comps], self.degree)

    def __rmul__(self, h):
        if isinstance(h, HomPoly):
            return Derivation([h * p for p in self.comps], self.degree + h.degree)
        return self.scale(h)

    def __mul__(self, h):
        return self.__rmul__(h)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.degree, self.comps))

    def __str__(self):
        return "(" + ", ".join(render_poly(c) for c in self.comps) + ")"

    def __repr__(self):
        return f"Derivation{self}"


BiDerivation = Derivation


def proportional(u: Sequence[FieldScalar], v: Sequence[FieldScalar]) -> bool:
    """True iff u = lambda * v for some nonzero lambda (both must be nonzero)."""
    if len(u) != len(v):
        return False
    if not any(u) or not any(v):
        return False
    i = next(k for k, x in enumerate(v) if x)
    if not u[i]:
        return False
    for a, b in zip(u, v):
        if a * v[i] != b * u[i]:
            return False
    return True


def poly_proportional(p: HomPoly, q: HomPoly) -> bool:
    if p.degree != q.degree:
        return False
    return proportional(p.to_vector(), q.to_vector())


def derivation_proportional(d1: Derivation, d2: Derivation) -> bool:
    if d1.degree != d2.degree:
        return False
    return proportional(d1.to_vector(), d2.to_vector())


# --- rendering and parsing -------------------------------------------------------

def _coef_str(c: FieldScalar) -> tuple[str, str]:
    """Sign and unsigned body for a coefficient."""
    if c.is_rational:
        q = c.c[0]
        body = str(abs(q.numerator)) if q.denominator == 1 else f"{abs(q.numerator)}/{q.denominator}"
        return ("-" if q < 0 else "+"), body
    s = str(c)
    nonzero = sum(1 for x in c.c if x)
    if nonzero == 1:
        if s.startswith("-"):
            return "-", s[1:]
        return "+", s
    return "+", f"({s})"


def render_poly(p: HomPoly) -> str:
    if not p.terms:
        return "0"
    names = VARNAMES[p.nvars]
    pieces = []
    for e in sorted(p.terms, reverse=True):
        sign, body = _coef_str(p.terms[e])
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if mono:
            if body == "1":
                text = mono
            else:
                text = f"{body}*{mono}"
        else:
            text = body
        pieces.append((sign, text))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


class _PolyValue:
    """Inhomogeneous helper used only while parsing."""

    def __init__(self, field, nvars, terms):
        self.field = field
        self.nvars = nvars
        self.terms = terms

    @classmethod
    def of(cls, x, field, nvars):
        if isinstance(x, _PolyValue):
            return x
        return cls(field, nvars, {(0,) * nvars: x})

    def _combine(self, other, sign):
        other = _PolyValue.of(other, self.field, self.nvars)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, self.field.zero()) + (c if sign > 0 else -c)
        return _PolyValue(self.field, self.nvars, {e: c for e, c in out.items() if c})

    def __add__(self, o):
        return self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, o):
        return self._combine(o, -1)

    def __rsub__(self, o):
        return _PolyValue.of(o, self.field, self.nvars)._combine(self, -1)

    def __neg__(self):
        return _PolyValue(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, o):
        o = _PolyValue.of(o, self.field, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, self.field.zero()) + c1 * c2
        return _PolyValue(self.field, self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        r = _PolyValue.of(self.field.one(), self.field, self.nvars)
        for _ in range(k):
            r = r * self
        return r

    def constant_value(self):
        if all(sum(e) == 0 for e in self.terms):
            return self.terms.get((0,) * self.nvars, self.field.zero())
        return None


def parse_poly(text: str, field: NumberField = QQ, nvars: int = 3) -> HomPoly:
    """Parse a homogeneous polynomial such as ``x^2 + t*y*z``."""
    names = VARNAMES[nvars]
    variables = {}
    for i, n in enumerate(names):
        e = [0] * nvars
        e[i] = 1
        variables[n] = _PolyValue(field, nvars, {tuple(e): field.one()})
    val = _Parser(text, field, variables).parse()
    val = _PolyValue.of(val, field, nvars)
    degrees = {sum(e) for e in val.terms}
    if len(degrees) > 1:
        raise ValueError(f"{text!r} is not homogeneous")
    deg = degrees.pop() if degrees else 0
    return HomPoly(field, nvars, deg, val.terms)

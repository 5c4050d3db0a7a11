"""Named arrangements used throughout the tests and the CLI."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable

from .arrangement import Arrangement, LinearForm, make_line, parse_arrangement
from .polyring import parse_poly, poly_proportional
from .scalars import QQ, NumberField, make_cyclotomic


def _arr(name: str, rows, K: NumberField = QQ) -> Arrangement:
    return Arrangement([make_line(K, *r) for r in rows], K, name)


def triangle() -> Arrangement:
    return _arr("TRIANGLE", [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def f3() -> Arrangement:
    return _arr("F3", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (0, 1, -1), (1, 0, -1)])


def ssv() -> Arrangement:
    return _arr("SSV", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 1, 0), (0, 1, -1)])


def _monomial_lines(m: int, K: NumberField) -> list[LinearForm]:
    zeta = K.gen() if K.degree > 1 else K.scalar(-1 if m == 2 else 1)
    roots = [zeta ** a for a in range(m)]
    one, zero = K.one(), K.zero()
    out = []
    for r in roots:
        out.append(LinearForm([one, -r, zero]))
    for r in roots:
        out.append(LinearForm([zero, one, -r]))
    for r in roots:
        out.append(LinearForm([one, zero, -r]))
    return out


def mono(m: int) -> Arrangement:
    """(x^m - y^m)(y^m - z^m)(x^m - z^m) over the m-th cyclotomic field."""
    K = make_cyclotomic(m)
    A = Arrangement(_monomial_lines(m, K), K, f"MONO({m})")
    target = parse_poly(f"(x^{m} - y^{m})*(y^{m} - z^{m})*(x^{m} - z^{m})", K)
    if not poly_proportional(A.f, target):
        raise AssertionError("monomial arrangement builder is wrong")
    return A


def akx(k: int) -> Arrangement:
    """The monomial arrangement of order k plus the line x = 0."""
    K = make_cyclotomic(k)
    lines = _monomial_lines(k, K) + [LinearForm([K.one(), K.zero(), K.zero()])]
    return Arrangement(lines, K, f"AKX({k})")


def hessian() -> Arrangement:
    K = make_cyclotomic(3)
    eps = K.gen()
    one, zero = K.one(), K.zero()
    lines = [LinearForm([one, zero, zero]), LinearForm([zero, one, zero]), LinearForm([zero, zero, one])]
    for a in range(3):
        for b in range(3):
            lines.append(LinearForm([one, eps ** a, eps ** b]))
    A = Arrangement(lines, K, "HESSIAN")
    target = parse_poly("x*y*z*((x^3 + y^3 + z^3)^3 - 27*x^3*y^3*z^3)", K)
    if not poly_proportional(A.f, target):
        raise AssertionError("Hessian builder does not reproduce the degree 12 equation")
    return A


def pencils(n1: int, n2: int) -> Arrangement:
    """Two pencils through (1:0:0) and (0:1:0) with no common line."""
    rows = [(0, 1, -j) for j in range(n1)] + [(1, 0, -k) for k in range(n2)]
    return _arr(f"PENCILS({n1},{n2})", rows)


def pencils_joined(n1: int, n2: int) -> Arrangement:
    """Two pencils through (1:0:0) and (0:1:0) sharing the line z = 0."""
    rows = [(0, 0, 1)] + [(0, 1, -j) for j in range(n1 - 1)] + [(1, 0, -k) for k in range(n2 - 1)]
    return _arr(f"PENCILS_JOINED({n1},{n2})", rows)


def three_triples() -> Arrangement:
    """Triple points at the coordinate vertices, joined only by x = 0 and y = 0."""
    rows = [(0, 1, 0), (0, 1, -1), (0, 1, 1), (1, 0, 0), (1, 0, -1), (1, 0, 1), (1, -1, 0)]
    return _arr("THREE_TRIPLES", rows)


def nodal(d: int) -> Arrangement:
    """d lines in general position: x, y, z and x + a y + a^2 z."""
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + [(1, a, a * a) for a in range(1, d - 2)]
    if d == 4:
        rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    A = _arr(f"NODAL({d})", rows[:d])
    assert all(lp.multiplicity == 2 for lp in A.lattice)
    return A


def one_triple() -> Arrangement:
    """x, y, x - y and two further generic lines: one triple point."""
    return _arr("ONE_TRIPLE", [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 2, 3), (3, 1, -2)])


def plus_one() -> Arrangement:
    """A plus-one generated arrangement whose maximal multiplicity equals its first exponent."""
    return _arr("PLUS_ONE", PLUS_ONE_ROWS)


# found by a seeded random search over small integer lines
PLUS_ONE_ROWS = [(0, 1, 2), (0, 1, 1), (1, 0, -1), (1, 1, -1), (0, 2, 1), (2, -1, -2), (1, -1, -2)]


ZIEGLER_NOTE = ("external data: supply the two 9-line arrangements from the literature "
                "with `linarr verify thmD2 FILE --partner FILE`")


@dataclass
class CatalogEntry:
    name: str
    builder: Callable[..., Arrangement]
    params: tuple = ()
    expected: dict = field(default_factory=dict)
    description: str = ""

    def build(self) -> Arrangement:
        return self.builder(*self.params)


def catalog() -> list[CatalogEntry]:
    entries = [
        CatalogEntry("TRIANGLE", triangle, (), {"tau": 3, "exponents": (1, 1), "N": 2, "N0": 2},
                     "xyz"),
        CatalogEntry("F3", f3, (), {"tau": 19, "exponents": (2, 3), "N": 3, "N0": 3},
                     "xyz(x-y)(y-z)(x-z)"),
        CatalogEntry("SSV", ssv, (), {"free": True}, "xyz(x^2-y^2)(y-z)"),
        CatalogEntry("MONO(3)", mono, (3,), {}, "(x^3-y^3)(y^3-z^3)(x^3-z^3)"),
        CatalogEntry("MONO(4)", mono, (4,), {"mdr": 5}, "(x^4-y^4)(y^4-z^4)(x^4-z^4)"),
        CatalogEntry("AKX(2)", akx, (2,), {"mdr": 3, "N": 3, "free": True}, "MONO(2) plus x = 0"),
        CatalogEntry("AKX(3)", akx, (3,), {"mdr": 4, "N": 4, "free": True}, "MONO(3) plus x = 0"),
        CatalogEntry("HESSIAN", hessian, (), {"tau": 93, "exponents": (4, 7), "N": 5},
                     "xyz((x^3+y^3+z^3)^3 - 27x^3y^3z^3)"),
        CatalogEntry("PENCILS(2,2)", pencils, (2, 2), {"generators": (2, 2, 2)}, "two 2-line pencils"),
        CatalogEntry("PENCILS(3,4)", pencils, (3, 4), {"generators": (3, 4, 5)}, "3- and 4-line pencils"),
        CatalogEntry("PENCILS_JOINED(3,4)", pencils_joined, (3, 4), {},
                     "3- and 4-line pencils sharing a line"),
        CatalogEntry("THREE_TRIPLES", three_triples, (), {}, "three triple points, two joins in A"),
        CatalogEntry("NODAL(4)", nodal, (4,), {"mdr": 2, "N": 3}, "4 generic lines"),
        CatalogEntry("NODAL(5)", nodal, (5,), {"mdr": 3, "N": 4}, "5 generic lines"),
        CatalogEntry("ONE_TRIPLE", one_triple, (), {"mdr": 2, "N": 3}, "one triple point, d = 5"),
        CatalogEntry("ZIEGLER", _ziegler_slot, (), {}, ZIEGLER_NOTE),
        CatalogEntry("PLUS_ONE", plus_one, (), {"generators": (3, 4, 4)},
                     "plus-one generated with m(A) = d_1 = 3"),
    ]
    return entries


def _ziegler_slot() -> Arrangement:
    raise LookupError(ZIEGLER_NOTE)


def lookup(name: str) -> Arrangement:
    for e in catalog():
        if e.name == name:
            return e.build()
    # parametrised families accept any arguments
    m = re.fullmatch(r"(MONO|AKX|PENCILS|PENCILS_JOINED|NODAL)\((\d+)(?:,(\d+))?\)", name)
    if m:
        fam = {"MONO": mono, "AKX": akx, "PENCILS": pencils, "PENCILS_JOINED": pencils_joined,
               "NODAL": nodal}[m.group(1)]
        args = [int(g) for g in m.groups()[1:] if g is not None]
        return fam(*args)
    raise KeyError(f"unknown catalog entry {name!r}")


def buildable() -> list[Arrangement]:
    out = []
    for e in catalog():
        try:
            out.append(e.build())
        except LookupError:
            pass
    return out


def random_arrangement(seed: int, d: int, max_coeff: int = 3) -> Arrangement:
    """d distinct rational lines, rejection-sampled until the result is not a pencil."""
    if d < 3:
        raise ValueError("need d >= 3")
    rng = random.Random(seed)
    while True:
        lines: list[LinearForm] = []
        seen = set()
        while len(lines) < d:
            v = [rng.randint(-max_coeff, max_coeff) for _ in range(3)]
            if not any(v):
                continue
            l = make_line(QQ, *v)
            if l in seen:
                continue
            seen.add(l)
            lines.append(l)
        A = Arrangement(lines, QQ, f"random(seed={seed},d={d})")
        if not A.is_pencil():
            return A


def load_target(target: str) -> Arrangement:
    if target.startswith("catalog:"):
        return lookup(target[len("catalog:"):])
    if target.startswith("random:"):
        seed, d = target[len("random:"):].split(",")
        return random_arrangement(int(seed), int(d))
    with open(target) as fh:
        return parse_arrangement(fh.read(), name=target)

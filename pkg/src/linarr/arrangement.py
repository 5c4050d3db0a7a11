"""Line arrangements in the projective plane and their intersection lattice."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .polyring import HomPoly, substitute_linear
from .scalars import FieldScalar, NumberField, QQ, parse_modulus, parse_scalar


class PencilError(ValueError):
    pass


def _canonical(coords: Sequence[FieldScalar]) -> tuple[FieldScalar, ...]:
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("zero vector")
    inv = lead.inverse()
    return tuple(c * inv for c in coords)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


class _Projective:
    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Sequence[FieldScalar]):
        if len(coords) != 3:
            raise ValueError("need three coordinates")
        self.coords = _canonical(coords)
        self._hash = hash(self.coords)

    @property
    def field(self) -> NumberField:
        return self.coords[0].field

    def __eq__(self, other):
        return type(other) is type(self) and self.coords == other.coords

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return sort_key(self.coords) < sort_key(other.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def sort_key(coords):
    return tuple(c.c for c in coords)


class LinearForm(_Projective):
    """The line alpha*x + beta*y + gamma*z = 0, first nonzero coefficient 1."""

    __slots__ = ()

    @property
    def alpha(self):
        return self.coords[0]

    @property
    def beta(self):
        return self.coords[1]

    @property
    def gamma(self):
        return self.coords[2]

    def poly(self) -> HomPoly:
        return HomPoly.linear(self.coords)

    def contains(self, p: "ProjPoint") -> bool:
        return not sum((a * b for a, b in zip(self.coords, p.coords)), self.field.zero())

    def __str__(self):
        return str(self.poly())

    def __repr__(self):
        return f"LinearForm({self})"


class ProjPoint(_Projective):
    """The point (u : v : w), first nonzero coordinate 1."""

    __slots__ = ()

    @property
    def u(self):
        return self.coords[0]

    @property
    def v(self):
        return self.coords[1]

    @property
    def w(self):
        return self.coords[2]

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


def make_line(field: NumberField, a, b, c) -> LinearForm:
    return LinearForm([x if isinstance(x, FieldScalar) else field.scalar(x) for x in (a, b, c)])


def make_point(field: NumberField, u, v, w) -> ProjPoint:
    return ProjPoint([x if isinstance(x, FieldScalar) else field.scalar(x) for x in (u, v, w)])


def intersect(l1: LinearForm, l2: LinearForm) -> ProjPoint:
    c = _cross(l1.coords, l2.coords)
    if not any(c):
        raise ValueError("lines coincide")
    return ProjPoint(c)


def join(p: ProjPoint, q: ProjPoint) -> LinearForm:
    c = _cross(p.coords, q.coords)
    if not any(c):
        raise ValueError("points coincide")
    return LinearForm(c)


def collinear(points: Sequence[ProjPoint]) -> bool:
    """Exact test via 3x3 minors."""
    if len(points) <= 2:
        return True
    base = points[0]
    other = next((q for q in points[1:] if q != base), None)
    if other is None:
        return True
    line = join(base, other)
    return all(line.contains(q) for q in points)


@dataclass(frozen=True)
class LatticePoint:
    point: ProjPoint
    incident: frozenset

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    def __str__(self):
        return f"{self.point} m={self.multiplicity}"


@dataclass(frozen=True)
class Lattice:
    points: tuple

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def find(self, p: ProjPoint) -> LatticePoint:
        for lp in self.points:
            if lp.point == p:
                return lp
        raise KeyError(f"{p} is not a multiple point")

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for lp in self.points:
            out[lp.multiplicity] = out.get(lp.multiplicity, 0) + 1
        return dict(sorted(out.items()))


class Arrangement:
    """An ordered list of pairwise distinct lines over a number field."""

    def __init__(self, lines: Iterable[LinearForm], field: NumberField | None = None, name: str = ""):
        lines = list(lines)
        if field is None:
            field = lines[0].field if lines else QQ
        for l in lines:
            if l.field != field:
                raise ValueError("field mismatch")
        if len(set(lines)) != len(lines):
            raise ValueError("repeated line")
        if len(lines) < 2:
            raise ValueError("an arrangement needs at least two lines")
        self.lines = tuple(lines)
        self.field = field
        self.name = name

    @property
    def d(self) -> int:
        return len(self.lines)

    def __len__(self):
        return len(self.lines)

    def __repr__(self):
        return f"Arrangement({self.name or self.d})"

    @cached_property
    def lattice(self) -> Lattice:
        return lattice(self)

    @cached_property
    def f(self) -> HomPoly:
        return defining_poly(self)

    def index(self, line: LinearForm) -> int:
        return self.lines.index(line)

    def max_multiplicity(self) -> int:
        return max(lp.multiplicity for lp in self.lattice)

    def is_pencil(self) -> bool:
        return self.max_multiplicity() == self.d

    def without(self, i: int) -> "Arrangement":
        return Arrangement(self.lines[:i] + self.lines[i + 1:], self.field)

    def transformed(self, M) -> "Arrangement":
        """Arrangement whose defining polynomial is f(M X)."""
        out = []
        for l in self.lines:
            a = l.coords
            out.append(LinearForm([sum((a[i] * _entry(M, i, j, self.field) for i in range(3)),
                                       self.field.zero()) for j in range(3)]))
        return Arrangement(out, self.field, self.name)

    def multiple_points(self) -> list[ProjPoint]:
        return [lp.point for lp in self.lattice]


def _entry(M, i, j, field):
    v = M[i][j]
    return v if isinstance(v, FieldScalar) else field.scalar(v)


def lattice(A: Arrangement) -> Lattice:
    groups: dict[ProjPoint, set] = {}
    for i in range(A.d):
        for j in range(i + 1, A.d):
            p = intersect(A.lines[i], A.lines[j])
            groups.setdefault(p, set()).update((i, j))
    pts = []
    for p, inc in groups.items():
        full = frozenset(k for k, l in enumerate(A.lines) if l.contains(p))
        assert full == inc
        pts.append(LatticePoint(p, full))
    pts.sort(key=lambda lp: (-lp.multiplicity, sort_key(lp.point.coords)))
    total = sum(comb(lp.multiplicity, 2) for lp in pts)
    if total != comb(A.d, 2):
        raise AssertionError("lattice identity failed")
    return Lattice(tuple(pts))


def tau(A: Arrangement) -> int:
    return sum((lp.multiplicity - 1) ** 2 for lp in A.lattice)


def defining_poly(A: Arrangement) -> HomPoly:
    f = HomPoly.constant(A.field, 1)
    for l in A.lines:
        f = f * l.poly()
    return f


def product(field: NumberField, forms: Iterable[LinearForm]) -> HomPoly:
    f = HomPoly.constant(field, 1)
    for l in forms:
        f = f * l.poly()
    return f


def split_at(A: Arrangement, p: LatticePoint | ProjPoint) -> tuple[HomPoly, HomPoly]:
    lp = p if isinstance(p, LatticePoint) else A.lattice.find(p)
    if lp.multiplicity >= A.d:
        raise PencilError("pencil at p")
    f1 = product(A.field, (A.lines[i] for i in sorted(lp.incident)))
    f2 = product(A.field, (l for i, l in enumerate(A.lines) if i not in lp.incident))
    return f1, f2


def connected(A: Arrangement, p: ProjPoint, q: ProjPoint) -> bool:
    if p == q:
        raise ValueError("points coincide")
    return join(p, q) in A.lines


def modular_points(A: Arrangement) -> list[LatticePoint]:
    pts = A.lattice.points
    return [lp for lp in pts
            if all(connected(A, lp.point, q.point) for q in pts if q is not lp)]


def is_supersolvable(A: Arrangement) -> bool:
    if A.is_pencil():
        raise PencilError("pencil arrangement")
    return bool(modular_points(A))


def euler_complement(A: Arrangement) -> int:
    d = A.d
    via_tau = 3 - (2 - (d - 1) * (d - 2) + tau(A))
    via_strata = 3 - (2 * d - sum(lp.multiplicity - 1 for lp in A.lattice))
    if via_tau != via_strata:
        raise AssertionError("Euler characteristic formulas disagree")
    return via_tau


# --- file format -------------------------------------------------------------------

def parse_arrangement(text: str, name: str = "") -> Arrangement:
    field = QQ
    lines = []
    seen_field = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field:"):
            if seen_field or lines:
                raise ValueError("field line must come first")
            field = parse_modulus(line[len("field:"):])
            seen_field = True
            continue
        parts = [s.strip() for s in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'alpha, beta, gamma', got {raw!r}")
        lines.append(LinearForm([parse_scalar(s, field) for s in parts]))
    return Arrangement(lines, field, name)


def dump_arrangement(A: Arrangement) -> str:
    out = [f"field: {A.field.render()}"]
    for l in A.lines:
        out.append(", ".join(str(c) for c in l.coords))
    return "\n".join(out) + "\n"

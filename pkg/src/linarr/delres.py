"""Deletion and restriction along a line L, moved to x = 0.

With f = x * f' the maps are
    u0(delta') = x * delta' - (a / d) * E                     (a = first component)
    v0(delta)  = (b, c)|_{x=0} + a1|_{x=0} / (d - 1) * (y, z)  (delta = (x * a1, b, c))
and they give an exact sequence 0 -> D_0(f')(-1) -> D_0(f) -> D_0(f'').
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, LinearForm, make_line, split_at
from .checks import NOT_MET, Check
from .linalg import k_rank
from .localder import local_derivations, tilde
from .polyring import (Derivation, HomPoly, NotDivisibleError, binary_distinct_roots, dim_s,
                       monomials, poly_proportional, derivation_proportional, substitute_linear)
from .syzygy import module_of


def _inverse3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if not det:
        raise ValueError("singular matrix")
    inv = det.inverse()
    adj = [[e * i - f * h, c * h - b * i, b * f - c * e],
           [f * g - d * i, a * i - c * g, c * d - a * f],
           [d * h - e * g, b * g - a * h, a * e - b * d]]
    return [[v * inv for v in row] for row in adj]


def line_to_x_matrix(line: LinearForm):
    """Matrix M with line(M X) = x."""
    K = line.field
    one, zero = K.one(), K.zero()
    i0 = next(i for i, c in enumerate(line.coords) if c)
    rows = [list(line.coords)]
    for j in range(3):
        if j != i0:
            rows.append([one if t == j else zero for t in range(3)])
    return _inverse3(rows)


def move_line_to_x(A: Arrangement, L: int):
    """Change coordinates so that line number L becomes x = 0; returns (A', M)."""
    M = line_to_x_matrix(A.lines[L])
    B = A.transformed(M)
    assert B.lines[L].coords == (A.field.one(), A.field.zero(), A.field.zero())
    return B, M


def u0(delta_prime: Derivation, d: int) -> Derivation:
    K = delta_prime.field
    x = HomPoly.var(K, 0)
    E = Derivation.euler(K)
    return x * delta_prime - (delta_prime.a * E).scale(Fraction(1, d))


class NotASyzygy(ValueError):
    pass


def v0(delta: Derivation, d: int) -> Derivation:
    K = delta.field
    x = HomPoly.var(K, 0)
    try:
        a1 = delta.a.exact_div(x) if delta.a.terms else HomPoly.zero(K, 3, max(delta.degree - 1, 0))
    except NotDivisibleError:
        raise NotASyzygy("first component not divisible by x") from None
    a1b = a1.restrict_x0()
    y, z = HomPoly.var(K, 0, 2), HomPoly.var(K, 1, 2)
    c = Fraction(1, d - 1)
    b = delta.b.restrict_x0()
    cc = delta.c.restrict_x0()
    if a1b.terms:
        b = b + (a1b * y).scale(c)
        cc = cc + (a1b * z).scale(c)
    return Derivation([b, cc], delta.degree)


@dataclass
class RestrictionProfile:
    forms: list          # bivariate linear forms beta*y + gamma*z
    mults: list          # multiplicities m_i in A
    points: list         # the lattice points on L (in moved coordinates)

    @property
    def k(self) -> int:
        return len(self.forms)

    def f_dd(self) -> HomPoly:
        K = self.forms[0].field
        out = HomPoly.constant(K, 1, 2)
        for l, m in zip(self.forms, self.mults):
            out = out * l ** (m - 1)
        return out

    def g(self, i: int) -> HomPoly:
        K = self.forms[0].field
        out = HomPoly.constant(K, 1, 2)
        for s, (l, m) in enumerate(zip(self.forms, self.mults)):
            if s != i:
                out = out * l ** (m - 2)
        return out


def restriction_profile(B: Arrangement, L: int = 0) -> RestrictionProfile:
    """Profile of the line L of B, which must already be x = 0."""
    K = B.field
    if B.lines[L].coords != (K.one(), K.zero(), K.zero()):
        raise ValueError("move the line to x = 0 first")
    if B.is_pencil():
        raise ValueError("pencil arrangement")
    forms, mults, pts = [], [], []
    for lp in B.lattice:
        if L in lp.incident:
            _, v, w = lp.point.coords
            # point (0 : -gamma : beta) gives the form beta*y + gamma*z
            forms.append(HomPoly.linear([w, -v]))
            mults.append(lp.multiplicity)
            pts.append(lp)
    prof = RestrictionProfile(forms, mults, pts)
    assert sum(m - 1 for m in mults) == B.d - 1
    return prof


def delta_dd(profile: RestrictionProfile) -> Derivation:
    K = profile.forms[0].field
    k = profile.k
    B = HomPoly.zero(K, 2, k - 1)
    C = HomPoly.zero(K, 2, k - 1)
    for i, (l, m) in enumerate(zip(profile.forms, profile.mults)):
        rest = HomPoly.constant(K, 1, 2)
        for s, ls in enumerate(profile.forms):
            if s != i:
                rest = rest * ls
        beta = l.coefficient((1, 0))
        gamma = l.coefficient((0, 1))
        B = B + rest.scale(gamma * (m - 1))
        C = C + rest.scale(-beta * (m - 1))
    return Derivation([B, C], k - 1)


def _deleted(B: Arrangement, L: int) -> Arrangement:
    return B.without(L)


def exactness_check(A: Arrangement, L: int, k_max: int | None = None) -> list[Check]:
    B, _ = move_line_to_x(A, L)
    d = B.d
    k_max = d - 2 if k_max is None else k_max
    Bp = _deleted(B, L)
    mod, modp = module_of(B.f), module_of(Bp.f)
    fdd = B.f.exact_div(HomPoly.var(B.field, 0)).restrict_x0()
    out = []
    for k in range(0, k_max + 1):
        src = modp.basis(k - 1)
        imgs = [u0(dp, d) for dp in src]
        ok_kill = all(g.kills(B.f) for g in imgs)
        rank = k_rank(B.field, [g.to_vector() for g in imgs]) if imgs else 0
        comp = all(v0(g, d).is_zero() for g in imgs)
        vimgs = [v0(g, d) for g in mod.basis(k)]
        ok_v = all(v.kills(fdd) for v in vimgs)
        vrank = k_rank(B.field, [v.to_vector() for v in vimgs]) if vimgs else 0
        kernel = mod.dim(k) - vrank
        out.append(Check(f"k={k}: u0 lands in D_0(f)", ok_kill))
        out.append(Check(f"k={k}: u0 injective", rank == len(src), f"{rank}/{len(src)}"))
        out.append(Check(f"k={k}: v0 u0 = 0", comp))
        out.append(Check(f"k={k}: v0 lands in D_0(f'')", ok_v))
        out.append(Check(f"k={k}: dim ker v0 = dim D_0(f')_(k-1)", kernel == len(src),
                         f"{kernel} vs {len(src)}"))
    return out


def verify_eqG7(A: Arrangement, L: int) -> list[Check]:
    B, _ = move_line_to_x(A, L)
    if B.is_pencil():
        return [Check("pencil", NOT_MET)]
    prof = restriction_profile(B, L)
    dd = delta_dd(prof)
    out = [Check("delta'' kills f''", dd.kills(prof.f_dd()))]
    for i, lp in enumerate(prof.points):
        lhs = v0(tilde(B, lp), B.d)
        rhs = prof.g(i) * dd
        out.append(Check(f"v0 at {lp.point} ∝ g_i delta''", derivation_proportional(lhs, rhs)))
    return out


def verify_eqG8(profile: RestrictionProfile, d: int) -> list[Check]:
    K = profile.forms[0].field
    top = d - 2 - profile.k
    if top < 0:
        return [Check("(y,z)^(d-2-k) in (g_i)", True, "vacuous")]
    vecs = []
    for i in range(profile.k):
        g = profile.g(i)
        if g.degree <= top:
            for m in monomials(2, top - g.degree):
                vecs.append(g.mul_monomial(m).to_vector())
    rank = k_rank(K, vecs) if vecs else 0
    return [Check("(y,z)^(d-2-k) in (g_i)", rank == dim_s(2, top), f"{rank} vs {dim_s(2, top)}")]


def propG1(A: Arrangement, L: int) -> list[Check]:
    B, _ = move_line_to_x(A, L)
    Bp = _deleted(B, L)
    x = HomPoly.var(B.field, 0)
    out = []
    for lp in Bp.lattice:
        if lp.multiplicity >= Bp.d:
            continue
        img = u0(tilde(Bp, lp), B.d)
        full = tilde(B, lp.point)
        on_L = B.lines[L].contains(lp.point)
        want = x * full if on_L else full
        out.append(Check(f"u0 of deleted local derivation at {lp.point}", img == want,
                         "on L" if on_L else "off L"))
    return out


def propG2(A: Arrangement, L: int) -> list[Check]:
    B, _ = move_line_to_x(A, L)
    d = B.d
    out = []
    for lp in B.lattice:
        img = v0(tilde(B, lp), d)
        if L not in lp.incident:
            out.append(Check(f"v0 vanishes at {lp.point} off L", img.is_zero()))
            continue
        _, v, w = lp.point.coords
        gamma, beta = -v, w
        _, f2 = split_at(B, lp)
        f2b = f2.restrict_x0()
        Ap = f2b.partial(0).scale(gamma) - f2b.partial(1).scale(beta)
        y, z = HomPoly.var(B.field, 0, 2), HomPoly.var(B.field, 1, 2)
        c = Fraction(1, d - 1)
        want = Derivation([(y * Ap - f2b.scale(gamma * (d - 1))).scale(c),
                           (z * Ap + f2b.scale(beta * (d - 1))).scale(c)], img.degree)
        out.append(Check(f"v0 formula at {lp.point} on L", img == want))
    return out


def cor1G_check(C_prime: HomPoly, line: LinearForm, top_extra: int = 4) -> list[Check]:
    """Compare D_0(f') and D_0(f) for f = line * f', in coordinates with line = x."""
    M = line_to_x_matrix(line)
    fp = substitute_linear(C_prime, M)
    x = HomPoly.var(C_prime.field, 0)
    f = x * fp
    if not fp.restrict_x0().terms:
        raise ValueError("the line is a component of the curve")
    r = binary_distinct_roots(fp.restrict_x0())
    mod, modp = module_of(f), module_of(fp)
    out = []
    for k in range(0, r - 1):
        out.append(Check(f"dim D_0(f)_{k} = dim D_0(f')_{k - 1}", mod.dim(k) == modp.dim(k - 1),
                         f"{mod.dim(k)} vs {modp.dim(k - 1)}"))
    top = max(f.degree - 2, r - 1) + top_extra
    degs = [g.degree for g in mod.generators(top)]
    out.append(Check(f"a generator of degree >= r-1 = {r - 1}", any(g >= r - 1 for g in degs),
                     f"generator degrees {degs}"))
    return out

"""Local derivations attached to multiple points, and the determinant map.

For a multiple point p = (u:v:w) with f = f1 * f2 (lines through p, lines
avoiding p) the local derivation is f2 * D_p - (D_p(f2) / d) * E, where D_p
is the constant derivation (u, v, w) and E the Euler derivation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arrangement import (Arrangement, LatticePoint, PencilError, ProjPoint, collinear,
                          connected, join, make_point, product, split_at, tau)
from .checks import INCONCLUSIVE, NOT_MET, Check
from .linalg import k_rank
from .polyring import Derivation, HomPoly, dim_s, monomials, poly_proportional, proportional
from .syzygy import is_free, module_of


@dataclass(frozen=True)
class LocalDerivation:
    point: LatticePoint
    deriv: Derivation


def _lattice_point(A: Arrangement, p) -> LatticePoint:
    if isinstance(p, LatticePoint):
        return p
    return A.lattice.find(p)


def local_derivation(A: Arrangement, p) -> LocalDerivation:
    lp = _lattice_point(A, p)
    f1, f2 = split_at(A, lp)
    dp = Derivation.constant(lp.point.coords)
    dpf2 = dp.apply(f2)
    E = Derivation.euler(A.field)
    tilde = f2 * dp - (dpf2 * E).scale(Fraction(1, A.d))
    return LocalDerivation(lp, tilde)


def local_derivations(A: Arrangement) -> dict:
    cache = A.__dict__.setdefault("_local", {})
    if not cache:
        for lp in A.lattice:
            cache[lp.point] = local_derivation(A, lp).deriv
    return cache


def tilde(A: Arrangement, p) -> Derivation:
    lp = _lattice_point(A, p)
    return local_derivations(A)[lp.point]


def _vanishes_to_order(poly: HomPoly, point, order: int) -> bool:
    """All partial derivatives of order < ``order`` vanish at the point."""
    for r in range(order):
        for orders in monomials(3, r):
            if poly.derivative(orders).eval(point):
                return False
    return True


def check_thm1_properties(A: Arrangement, p, samples: int = 3, seed: int = 0) -> list[Check]:
    lp = _lattice_point(A, p)
    d = A.d
    f1, f2 = split_at(A, lp)
    D = tilde(A, lp)
    pt = lp.point.coords
    out = [
        Check("constant derivation kills f_1p", Derivation.constant(pt).kills(f1)),
        Check("local derivation kills f", D.kills(A.f)),
        Check("degree d - m_p", D.degree == d - lp.multiplicity, str(D.degree)),
    ]
    at_p = D.evaluate(pt)
    scale = f2.eval(pt) * Fraction(lp.multiplicity, d)
    out.append(Check("nonzero at p", any(at_p)))
    out.append(Check("value at p = (m_p/d) f_2p(p) p", all(a == scale * c for a, c in zip(at_p, pt))))
    avoid = [i for i in range(d) if i not in lp.incident]
    for q in A.lattice:
        if q is lp:
            continue
        order = q.multiplicity - 2
        ok = all(_vanishes_to_order(c, q.point.coords, order) for c in D.comps)
        out.append(Check(f"vanishing order >= {order} at {q.point}", ok))
        in_a2 = len(q.incident - lp.incident) >= 2
        zero = not any(D.evaluate(q.point.coords))
        out.append(Check(f"zero at {q.point} iff multiple in A_2", zero == in_a2))
    rng = random.Random(seed)
    K = A.field
    for i in avoid:
        line = A.lines[i]
        for _ in range(samples):
            pt2 = _random_point_on(line, rng)
            if any(A.lines[j].contains(pt2) for j in avoid if j != i):
                continue
            out.append(Check(f"nonzero at simple point {pt2}", any(D.evaluate(pt2.coords))))
    for _ in range(samples):
        coords = [rng.randint(-9, 9) for _ in range(3)]
        if not any(coords):
            continue
        pt2 = make_point(K, *coords)
        if any(A.lines[j].contains(pt2) for j in avoid):
            continue
        out.append(Check(f"nonzero off A_2 at {pt2}", any(D.evaluate(pt2.coords))))
    return out


def _random_point_on(line, rng) -> ProjPoint:
    K = line.field
    while True:
        # meet the line with a random auxiliary line
        aux = [K.scalar(rng.randint(-9, 9)) for _ in range(3)]
        c = (line.coords[1] * aux[2] - line.coords[2] * aux[1],
             line.coords[2] * aux[0] - line.coords[0] * aux[2],
             line.coords[0] * aux[1] - line.coords[1] * aux[0])
        if any(c):
            return ProjPoint(c)


def monomial_multiples(D: Derivation, degree: int) -> list[list]:
    K = D.field
    out = []
    for m in monomials(3, degree):
        out.append((HomPoly.monomial(K, m) * D).to_vector())
    return out


def span_thm2(A: Arrangement) -> list[Check]:
    d = A.d
    vecs = []
    expected = 0
    for lp in A.lattice:
        if lp.multiplicity >= 3:
            vecs += monomial_multiples(tilde(A, lp), lp.multiplicity - 3)
            expected += comb(lp.multiplicity - 1, 2)
    dim = module_of(A.f).dim(d - 3)
    rank = k_rank(A.field, vecs) if vecs else 0
    return [Check("vector count", len(vecs) == expected, str(len(vecs))),
            Check("independent", rank == len(vecs), f"rank {rank}"),
            Check("spans the degree d-3 piece", rank == dim, f"{rank} vs {dim}")]


class Degenerate(ValueError):
    pass


def span_thm3(A: Arrangement, p, p2, p3) -> list[Check]:
    pts = [_lattice_point(A, x) for x in (p, p2, p3)]
    if any(lp.multiplicity < 3 for lp in pts):
        raise Degenerate("points must have multiplicity >= 3")
    if collinear([lp.point for lp in pts]):
        raise Degenerate("points are collinear")
    joined = sum(connected(A, a.point, b.point) for a, b in ((pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2])))
    if joined == 3:
        return [Check("three connecting lines in the arrangement", NOT_MET)]
    vecs = []
    for lp in pts:
        vecs += monomial_multiples(tilde(A, lp), lp.multiplicity - 2)
    expected = sum(comb(lp.multiplicity, 2) for lp in pts)
    rank = k_rank(A.field, vecs)
    return [Check("direct sum in degree d-2", rank == expected, f"rank {rank} vs {expected}")]


def span_thmG(A: Arrangement) -> list[Check]:
    if A.is_pencil():
        return [Check("pencil", NOT_MET)]
    d = A.d
    vecs = []
    for lp in A.lattice:
        vecs += monomial_multiples(tilde(A, lp), lp.multiplicity - 2)
    rank = k_rank(A.field, vecs)
    dim = module_of(A.f).dim(d - 2)
    return [Check("local derivations span degree d-2", rank == dim, f"{rank} vs {dim}")]


# --- determinant map ---------------------------------------------------------------------

def _det3(rows) -> HomPoly:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def delta_det(rho: Derivation, rho2: Derivation) -> HomPoly:
    E = Derivation.euler(rho.field)
    return _det3([E.comps, rho.comps, rho2.comps])


def default_rho(A: Arrangement) -> Derivation:
    m = module_of(A.f)
    return m.basis(m.mdr())[0]


def g_p(A: Arrangement, rho: Derivation, p) -> HomPoly:
    """Image of the local derivation at p under the determinant map, by two routes."""
    lp = _lattice_point(A, p)
    f1, f2 = split_at(A, lp)
    via_tilde = delta_det(rho, tilde(A, lp)).exact_div(A.f)
    delta_p = delta_det(rho, Derivation.constant(lp.point.coords))
    via_f1 = delta_p.exact_div(f1)
    if via_tilde != via_f1 and (via_tilde.terms or via_f1.terms):
        raise AssertionError("the two formulas for g_p disagree")
    return via_f1


def h_p_arrangement(A: Arrangement, q, p) -> HomPoly:
    lq, lp = _lattice_point(A, q), _lattice_point(A, p)
    if lq.point == lp.point:
        raise ValueError("points coincide")
    forms = [l for i, l in enumerate(A.lines) if i not in lq.incident and i not in lp.incident]
    if not connected(A, lp.point, lq.point):
        forms.append(join(lp.point, lq.point))
    h = product(A.field, forms)
    assert h.degree == A.d - lp.multiplicity - lq.multiplicity + 1
    return h


def verify_prop40(A: Arrangement, q) -> list[Check]:
    lq = _lattice_point(A, q)
    d = A.d
    if lq.multiplicity != A.max_multiplicity() or 2 * lq.multiplicity <= d:
        return [Check("m_q = m(A) > d/2", NOT_MET)]
    rho = tilde(A, lq)
    out = [Check("local derivation at q has minimal degree", rho.degree == module_of(A.f).mdr())]
    for lp in A.lattice:
        if lp is lq or lp.multiplicity < 3:
            continue
        g = g_p(A, rho, lp)
        h = h_p_arrangement(A, lq, lp)
        tag = "connected" if connected(A, lp.point, lq.point) else "not connected"
        out.append(Check(f"g_p ∝ h_p at {lp.point} ({tag})", poly_proportional(g, h)))
    return out


def prop4_check(A: Arrangement, rho: Derivation | None = None) -> list[Check]:
    rho = rho or default_rho(A)
    d = A.d
    d1 = rho.degree
    out = []
    for lp in A.lattice:
        if not (3 <= lp.multiplicity and 2 * lp.multiplicity <= d + 1):
            continue
        t = tilde(A, lp)
        if t.degree == d1 and (t.is_zero() or proportional(t.to_vector(), rho.to_vector())):
            continue
        g = g_p(A, rho, lp)
        out.append(Check(f"g_p nonzero of degree d_1+1-m_p at {lp.point}",
                         bool(g.terms) and g.degree == d1 + 1 - lp.multiplicity))
    return out


def _ideal_hilbert(field, gens: list[HomPoly], k: int) -> int:
    vecs = []
    for g in gens:
        if g.degree <= k:
            for m in monomials(3, k - g.degree):
                vecs.append(g.mul_monomial(m).to_vector())
    return dim_s(3, k) - (k_rank(field, vecs) if vecs else 0)


def freeness_thm4(A: Arrangement) -> list[Check]:
    d = A.d
    m = A.max_multiplicity()
    mod = module_of(A.f)
    d1 = mod.mdr()
    free, _ = is_free(A)
    out = []
    if 2 * m > d:
        out.append(Check("d_1 = d - m", d1 == d - m, f"d_1={d1}"))
        crit = tau(A) == (d - 1) ** 2 - (d - m) * (m - 1)
        out.append(Check("free iff tau criterion", crit == free))
    else:
        degs = mod.generator_degrees()
        case_a = d1 == m - 1 and free and degs[1] == d - m
        out.append(Check("d_1 = m-1 (free) or m <= d_1 <= d-m", case_a or m <= d1 <= d - m, f"d_1={d1}"))
    if not 2 <= m <= d - 2:
        out.append(Check("2 <= m <= d-2", NOT_MET))
        return out
    rho = mod.basis(d1)[0]
    gens = []
    for lp in A.lattice:
        if 3 <= lp.multiplicity and 2 * lp.multiplicity <= d + 1:
            g = g_p(A, rho, lp)
            if g.terms:
                gens.append(g)
    verdict = None  # True: empty zero set
    how = ""
    if not gens:
        verdict, how = False, "I(rho) = 0"
    elif any(g.degree == 0 for g in gens):
        verdict, how = True, "unit ideal"
    else:
        for lp in A.lattice:
            if all(not g.eval(lp.point.coords) for g in gens):
                verdict, how = False, f"common zero {lp.point}"
                break
    if verdict is None:
        top = 2 * max(g.degree for g in gens) + d
        gen_top = max(g.degree for g in gens)
        prev = None
        for k in range(min(g.degree for g in gens), top + 1):
            h = _ideal_hilbert(A.field, gens, k)
            if h == 0:
                verdict, how = True, f"(S/I)_{k} = 0"
                break
            # Gotzmann persistence: a constant value c <= k past the generators is final
            if prev is not None and k - 1 >= gen_top and h == prev and h <= k - 1:
                verdict, how = False, f"Hilbert function persists at {h} from degree {k - 1}"
                break
            prev = h
    if verdict is None:
        out.append(Check("empty zero set test", INCONCLUSIVE, "Hilbert function stayed positive"))
        verdict = False
    if verdict != free:
        raise AssertionError(f"zero-set verdict {verdict} disagrees with freeness {free} ({how})")
    out.append(Check("empty zero set iff free", True, how))
    return out


def tangency_checks(A: Arrangement, rho: Derivation | None = None) -> list[Check]:
    rho = rho or default_rho(A)
    out = []
    for l in A.lines:
        s = rho.a.scale(l.alpha) + rho.b.scale(l.beta) + rho.c.scale(l.gamma)
        try:
            s.exact_div(l.poly())
            ok = True
        except ArithmeticError:
            ok = False
        out.append(Check(f"tangent along {l}", ok))
    for lp in A.lattice:
        val = rho.evaluate(lp.point.coords)
        out.append(Check(f"rho({lp.point}) zero or ∝ point",
                         not any(val) or proportional(val, lp.point.coords)))
    pts = A.lattice.points
    for lp in pts:
        if lp.multiplicity >= A.d:
            continue
        g = None
        for lq in pts:
            if lq is lp or connected(A, lp.point, lq.point):
                continue
            if g is None:
                g = g_p(A, rho, lp)
            out.append(Check(f"g_p({lq.point}) = 0 for p={lp.point}", not g.eval(lq.point.coords)))
    return out

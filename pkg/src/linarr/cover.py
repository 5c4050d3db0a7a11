"""Minimal line covers of the multiple points and the geometry of unconnected points.

N is the least number of lines of the plane whose union contains every
multiple point; N0 is the same minimum over lines of the arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arrangement import (Arrangement, LatticePoint, LinearForm, ProjPoint, collinear, connected,
                          euler_complement, intersect, is_supersolvable, join, modular_points,
                          sort_key, split_at, tau)
from .checks import NOT_MET, Check
from .localder import _lattice_point, default_rho, g_p
from .syzygy import is_free, module_of

BRUTE_FORCE_LIMIT = 20


# --- exact set cover ----------------------------------------------------------------------

def _popcount(v: int) -> int:
    return bin(v).count("1")


def _lower_bound(masks: list[int], rest: int) -> int:
    """Fewest masks that could cover ``rest`` if the largest coverages were disjoint."""
    need = _popcount(rest)
    covers = sorted((_popcount(rest & m) for m in masks), reverse=True)
    if not covers or covers[0] == 0:
        return len(masks) + 1
    # never weaker than ceil(remaining / max coverage)
    total = 0
    for i, c in enumerate(covers):
        total += c
        if total >= need:
            return max(i + 1, -(-need // covers[0]))
    return len(masks) + 1


def _solve(masks: list[int], universe: int, limit: int | None = None) -> int | None:
    """Least number of masks whose union is ``universe``, or None if more than ``limit`` are needed."""
    if universe == 0:
        return 0
    cap = len(masks) if limit is None else min(limit, len(masks))
    best = [cap + 1]

    def rec(rest: int, used: int):
        if rest == 0:
            best[0] = min(best[0], used)
            return
        if used + _lower_bound(masks, rest) >= best[0]:
            return
        # branch on the uncovered point with the fewest covering candidates
        bits = [b for b in range(rest.bit_length()) if rest >> b & 1]
        pivot = min(bits, key=lambda b: sum(1 for m in masks if m >> b & 1))
        options = [m for m in masks if m >> pivot & 1]
        options.sort(key=lambda m: -_popcount(rest & m))
        for m in options:
            rec(rest & ~m, used + 1)

    rec(universe, 0)
    return best[0] if best[0] <= cap else None


def _lex_smallest(masks: list[int], universe: int, size: int) -> tuple[int, ...]:
    """Lexicographically smallest index tuple of ``size`` masks covering ``universe``.

    Built one index at a time: the next index is the least one that still
    admits a completion, which the solver decides.
    """
    chosen: list[int] = []
    rest, start = universe, 0
    while rest:
        left = size - len(chosen)
        for i in range(start, len(masks)):
            if not rest & masks[i]:
                continue
            after = rest & ~masks[i]
            if _solve(masks[i + 1:], after, left - 1) is not None:
                chosen.append(i)
                rest, start = after, i + 1
                break
        else:
            raise AssertionError("no cover of the requested size")
    return tuple(chosen)


def brute_force_cover(masks: list[int], universe: int) -> int | None:
    """Least cover size by enumerating subsets in increasing size."""
    for size in range(len(masks) + 1):
        for combo in combinations(masks, size):
            u = 0
            for m in combo:
                u |= m
            if u & universe == universe:
                return size
    return None


# --- cover instances ----------------------------------------------------------------------

@dataclass
class CoverInstance:
    points: list                 # ProjPoint of every multiple point
    candidates: list             # LinearForm
    in_A_mask: list              # bool per candidate

    def masks(self) -> list[int]:
        return [sum(1 << i for i, p in enumerate(self.points) if l.contains(p)) for l in self.candidates]

    @property
    def universe(self) -> int:
        return (1 << len(self.points)) - 1


def cover_instance(A: Arrangement) -> CoverInstance:
    pts = [lp.point for lp in A.lattice]
    cands: dict = {}
    for p, q in combinations(pts, 2):
        cands.setdefault(join(p, q), None)
    for lp in A.lattice:
        # a point on no join gets a line of A through it as its own marker
        if not any(l.contains(lp.point) for l in cands):
            cands.setdefault(A.lines[min(lp.incident)], None)
    lines = sorted(cands, key=lambda l: sort_key(l.coords))
    inst = CoverInstance(pts, lines, [l in A.lines for l in lines])
    assert all(any(l.contains(p) for l in lines) for p in pts)
    return inst


@dataclass
class CoverResult:
    N: int
    N0: int
    witnessN: list
    witnessN0: list

    def __post_init__(self):
        assert self.N <= self.N0


def _covers(lines, points) -> bool:
    return all(any(l.contains(p) for l in lines) for p in points)


def min_cover(A: Arrangement, brute_force: bool = True) -> CoverResult:
    inst = cover_instance(A)
    pts = inst.points
    masks = inst.masks()
    N = _solve(masks, inst.universe)
    idx = _lex_smallest(masks, inst.universe, N)
    wN = [inst.candidates[i] for i in idx]

    a_lines = sorted(A.lines, key=lambda l: sort_key(l.coords))
    a_masks = [sum(1 << i for i, p in enumerate(pts) if l.contains(p)) for l in a_lines]
    N0 = _solve(a_masks, inst.universe)
    idx0 = _lex_smallest(a_masks, inst.universe, N0)
    wN0 = [a_lines[i] for i in idx0]

    if not (_covers(wN, pts) and _covers(wN0, pts)):
        raise AssertionError("cover witness misses a multiple point")
    if brute_force and len(masks) <= BRUTE_FORCE_LIMIT:
        if brute_force_cover(masks, inst.universe) != N:
            raise AssertionError("branch and bound disagrees with enumeration")
    if brute_force and len(a_masks) <= BRUTE_FORCE_LIMIT:
        if brute_force_cover(a_masks, inst.universe) != N0:
            raise AssertionError("branch and bound disagrees with enumeration (lines of A)")
    return CoverResult(N, N0, wN, wN0)


def cover_of(A: Arrangement) -> CoverResult:
    cache = A.__dict__
    if "_cover" not in cache:
        cache["_cover"] = min_cover(A)
    return cache["_cover"]


# --- checks ------------------------------------------------------------------------------

def unconnected(A: Arrangement, p) -> list[LatticePoint]:
    lp = _lattice_point(A, p)
    return [q for q in A.lattice if q is not lp and not connected(A, lp.point, q.point)]


def conjecture_check(A: Arrangement) -> list[Check]:
    """N <= d_1 + 1; a failure is a potential counterexample, reported as data."""
    d1 = module_of(A.f).mdr()
    res = cover_of(A)
    out = [Check("N <= d_1 + 1", res.N <= d1 + 1, f"N={res.N} N0={res.N0} d_1={d1}")]
    if any(lp.multiplicity == d1 for lp in A.lattice):
        out.append(Check("some m_p = d_1 forces N <= d_1 + 1", res.N <= d1 + 1))
    return out


def curve_through_points(A: Arrangement) -> list[Check]:
    """All multiple points lie on g_p * f_1p = 0, of degree d_1 + 1, for p with d_1 < d - m_p."""
    mod = module_of(A.f)
    d1 = mod.mdr()
    cand = [lp for lp in A.lattice if d1 < A.d - lp.multiplicity]
    if not cand:
        return [Check("a point with d_1 < d - m_p", NOT_MET)]
    lp = max(cand, key=lambda q: q.multiplicity)
    g = g_p(A, default_rho(A), lp)
    curve = g * split_at(A, lp)[0]
    out = [Check("g_p nonzero", bool(g.terms)),
           Check("curve degree d_1 + 1", curve.degree == d1 + 1, f"{curve.degree}")]
    out.append(Check("every multiple point on the curve",
                     all(not curve.eval(q.point.coords) for q in A.lattice)))
    return out


def _hypothesis_1000(A: Arrangement, lp: LatticePoint, d1: int) -> bool:
    return lp.multiplicity <= d1 + 1 < A.d - lp.multiplicity + 1


def thm1000_report(A: Arrangement, p) -> list[Check]:
    lp = _lattice_point(A, p)
    d, m = A.d, lp.multiplicity
    mod = module_of(A.f)
    d1 = mod.mdr()
    if not _hypothesis_1000(A, lp, d1):
        return [Check(f"m_p <= d_1 + 1 < d - m_p + 1 at {lp.point}", NOT_MET, f"m_p={m} d_1={d1}")]
    Q = unconnected(A, lp)
    g = g_p(A, default_rho(A), lp)
    out = [Check("g_p nonzero of degree d_1 + 1 - m_p", bool(g.terms) and g.degree == d1 + 1 - m,
                 f"deg={g.degree if g.terms else None}")]
    out.append(Check("g_p vanishes on unconnected points",
                     all(not g.eval(q.point.coords) for q in Q), f"|Q|={len(Q)}"))
    if m == d1 + 1:
        out.append(Check("p modular", lp in modular_points(A)))
        out.append(Check("supersolvable", is_supersolvable(A)))
    if m == d1 and m == A.max_multiplicity():
        if not Q:
            out.append(Check("Q collinear", True, "Q empty, collinearity vacuous"))
        else:
            out.append(Check("Q collinear", collinear([q.point for q in Q])))
        s = sum(q.multiplicity - 1 for q in Q)
        out.append(Check("d - 2m_p <= sum (m_q - 1)", d - 2 * m <= s, f"{d - 2 * m} vs {s}"))
        degs = list(mod.generator_degrees())
        free, exps = is_free(A)
        if s == d - 2 * m:
            out.append(Check("equality: free with exponents (m_p, d-m_p-1)",
                             free and tuple(exps) == (m, d - m - 1), f"generators {degs}"))
        else:
            d3 = m - 1 + s
            out.append(Check("strict: plus-one generated (m_p, d-m_p, d_3)",
                             degs == [m, d - m, d3], f"generators {degs}, d_3={d3}"))
    return out


def thm100_check(A: Arrangement) -> list[Check]:
    d = A.d
    d1 = module_of(A.f).mdr()
    hits = [lp for lp in A.lattice if d1 == lp.multiplicity - 1 or d1 == d - lp.multiplicity]
    counts = A.lattice.counts()
    m = A.max_multiplicity()
    out = []
    # the listed families satisfy the degree hypothesis
    if set(counts) == {2} and d >= 3:
        out.append(Check("only double points: d_1 = d - 2", d1 == d - 2, f"d_1={d1}"))
    if set(counts) <= {2, 3} and 1 <= counts.get(3, 0) <= 3 and d >= 4:
        out.append(Check("n_3 in 1..3, rest double: d_1 = d - 3", d1 == d - 3, f"d_1={d1}"))
    if 2 * m >= d:
        out.append(Check("2m >= d: d_1 in {d - m, m - 1}", d1 in (d - m, m - 1), f"d_1={d1}"))
    if is_supersolvable(A):
        out.append(Check("supersolvable: d_1 = min(m-1, d-m)", d1 == min(m - 1, d - m), f"d_1={d1}"))
    if not hits:
        out.append(Check("a point with d_1 = m_p - 1 or d_1 = d - m_p", NOT_MET, f"d_1={d1}"))
        return out
    res = cover_of(A)
    out.append(Check("N0 <= d_1 + 1", res.N0 <= d1 + 1, f"N0={res.N0} d_1={d1}"))
    out.append(Check("N <= d_1 + 1", res.N <= d1 + 1, f"N={res.N}"))
    if set(counts) == {2}:
        out.append(Check("only double points: N = d - 1", res.N == d - 1, f"N={res.N}"))
    if set(counts) <= {2, 3} and 1 <= counts.get(3, 0) <= 3 and d >= 4:
        out.append(Check("n_3 in 1..3: N = d - 2", res.N == d - 2, f"N={res.N}"))
    return out


def carrier_line(points: list[ProjPoint]) -> LinearForm | None:
    """The unique line through at least two distinct collinear points, else None."""
    if len(points) < 2 or not collinear(points):
        return None
    return join(points[0], points[1])


def rkex10_bounds(A: Arrangement, p, L: LinearForm | None = None) -> list[Check]:
    lp = _lattice_point(A, p)
    Q = unconnected(A, lp)
    if L is None:
        L = carrier_line([q.point for q in Q])
        if L is None:
            return [Check("carrier line of Q", NOT_MET, f"|Q|={len(Q)}")]
    if not all(L.contains(q.point) for q in Q):
        return [Check("Q on L", NOT_MET)]
    d, m = A.d, lp.multiplicity
    if L in A.lines:
        s = sum(q.multiplicity - 1 for q in Q)
        return [Check("L in A: sum (m_q - 1) <= d - m_p - 1", s <= d - m - 1, f"{s} vs {d - m - 1}")]
    s = sum(q.multiplicity for q in Q)
    return [Check("L not in A: sum m_q <= d - m_p", s <= d - m, f"{s} vs {d - m}")]


def points_on(A: Arrangement, L: LinearForm) -> set:
    """Distinct points where L meets the lines of A (L itself not in A)."""
    return {intersect(L, l) for l in A.lines if l != L}


def added_lines(A: Arrangement, p) -> list[LinearForm]:
    lp = _lattice_point(A, p)
    out = {join(lp.point, q.point) for q in unconnected(A, lp)}
    return sorted(out, key=lambda l: sort_key(l.coords))


def lem10_euler(A: Arrangement, p) -> list[Check]:
    lp = _lattice_point(A, p)
    d, m = A.d, lp.multiplicity
    if m != A.max_multiplicity():
        return [Check("m_p = m(A)", NOT_MET)]
    E = added_lines(A, lp)
    e = len(E)
    # base points: lines through p meeting A in fewer than the generic d - m + 1 points
    through = {join(lp.point, q.point) for q in A.lattice if q is not lp}
    special = [l for l in through if l in A.lines or len(points_on(A, l)) < d - m + 1]
    b = len(special)
    out = [Check("b = m + e", b == m + e, f"b={b} m={m} e={e}")]
    ns = [len(points_on(A, l)) for l in E]
    rhs = (m + e - 2) * (d - m - 1) + sum(2 - n for n in ns)
    lhs = euler_complement(A)
    out.append(Check("E(M(A)) = (m+e-2)(d-m-1) + sum (2 - n_q)", lhs == rhs, f"{lhs} vs {rhs}, e={e}"))
    return out


def line_case(A: Arrangement, p, L: LinearForm) -> int:
    lp = _lattice_point(A, p)
    if L in A.lines:
        return 3
    return 2 if L.contains(lp.point) else 1


def case_tau_identity(A: Arrangement, p, L: LinearForm) -> list[Check]:
    """The tau formula obtained from the fibration by projecting from p, for a line L carrying Q."""
    lp = _lattice_point(A, p)
    d, m = A.d, lp.multiplicity
    if m != A.max_multiplicity():
        return [Check("m_p = m(A)", NOT_MET)]
    Q = unconnected(A, lp)
    if not all(L.contains(q.point) for q in Q):
        return [Check("Q on L", NOT_MET)]
    case = line_case(A, lp, L)
    t = tau(A)
    if case == 2:
        n_L = len(points_on(A, L) - {lp.point})
        rhs = (d - 1) ** 2 - m * (d - m - 1) - (m - n_L)
        on_L = [q for q in A.lattice if q is not lp and L.contains(q.point)]
        s = sum(q.multiplicity - 1 for q in on_L)
        return [Check("case 2: tau = (d-1)^2 - m(d-m-1) - (m - n_L)", t == rhs, f"{t} vs {rhs}"),
                Check("case 2: n_L = d - m - sum (m_q - 1)", n_L == d - m - s, f"n_L={n_L}")]
    s = sum(q.multiplicity - 1 for q in Q)
    rhs = (d - 1) ** 2 - m * (d - m - 1) - (s - (d - 2 * m))
    out = [Check(f"case {case}: tau = (d-1)^2 - m(d-m-1) - (sum (m_q-1) - (d-2m))", t == rhs,
                 f"{t} vs {rhs}")]
    if case == 1:
        E = added_lines(A, lp)
        ns = [len(points_on(A, l)) for l in E]
        out.append(Check("case 1: n_q = d - m - m_q + 2",
                         ns == [d - m - _lattice_point(A, _on(A, l, lp)).multiplicity + 2 for l in E]))
        out.append(Check("case 1: E(M(A)) = (m-2)(d-m-1) + sum (m_q - 1)",
                         euler_complement(A) == (m - 2) * (d - m - 1) + s))
    return out


def _on(A: Arrangement, l: LinearForm, lp: LatticePoint) -> ProjPoint:
    """The multiple point other than p on an added line (unique in case 1)."""
    others = [q.point for q in A.lattice if q is not lp and l.contains(q.point)]
    assert len(others) == 1
    return others[0]

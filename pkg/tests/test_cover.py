from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from linarr.arrangement import make_line, make_point, tau
from linarr.catalog import akx, hessian, lookup, random_arrangement
from linarr.checks import NOT_MET, all_ok
from linarr.cover import (_lex_smallest, _solve, brute_force_cover, carrier_line, case_tau_identity,
                          conjecture_check, cover_instance, curve_through_points, lem10_euler, line_case,
                          min_cover, rkex10_bounds, thm100_check, thm1000_report, unconnected)
from linarr.scalars import QQ
from linarr.syzygy import module_of


def _enumerate_first(masks, universe):
    for size in range(len(masks) + 1):
        for combo in combinations(range(len(masks)), size):
            u = 0
            for i in combo:
                u |= masks[i]
            if u & universe == universe:
                return size, combo
    return None, None


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, 2 ** n - 1), min_size=1, max_size=10))))
def test_solver_matches_enumeration(data):
    n, masks = data
    universe = 0
    for m in masks:
        universe |= m
    size, combo = _enumerate_first(masks, universe)
    assert _solve(masks, universe) == size == brute_force_cover(masks, universe)
    assert _lex_smallest(masks, universe, size) == combo


def test_solver_limit():
    masks = [0b0011, 0b1100, 0b0110, 0b1001]
    assert _solve(masks, 0b1111) == 2
    assert _solve(masks, 0b1111, limit=1) is None
    assert _solve([0b001, 0b010, 0b100], 0b111, limit=2) is None


@pytest.mark.parametrize("name,N,N0", [("TRIANGLE", 2, 2), ("F3", 3, 3), ("MONO(4)", 5, 6),
                                       ("HESSIAN", 5, 8), ("AKX(2)", 3, None)])
def test_cover_examples(name, N, N0):
    res = min_cover(lookup(name))
    assert res.N == N
    if N0 is not None:
        assert res.N0 == N0


def test_hessian_needs_six_lines_of_its_own():
    res = min_cover(hessian())
    assert res.N == 5 and res.N0 >= 6


def test_akx2_cover_equals_first_exponent():
    A = akx(2)
    assert min_cover(A).N == 3 == module_of(A.f).mdr()


def test_witnesses_cover_every_point():
    for name in ("SSV", "THREE_TRIPLES", "PLUS_ONE", "NODAL(5)"):
        A = lookup(name)
        res = min_cover(A)
        pts = [lp.point for lp in A.lattice]
        for wit, size in ((res.witnessN, res.N), (res.witnessN0, res.N0)):
            assert len(wit) == size
            assert all(any(l.contains(p) for l in wit) for p in pts)
        assert all(l in A.lines for l in res.witnessN0)


def test_cover_instance_contains_all_joins():
    A = lookup("SSV")
    inst = cover_instance(A)
    assert len(inst.points) == len(A.lattice.points)
    assert all(any(l.contains(p) for l in inst.candidates) for p in inst.points)


@pytest.mark.parametrize("seed", range(12))
def test_random_covers_cross_checked(seed):
    A = random_arrangement(seed, 4 + seed % 4)
    res = min_cover(A, brute_force=True)
    assert res.N <= res.N0
    assert all_ok(conjecture_check(A))


@pytest.mark.parametrize("name", ["TRIANGLE", "F3", "SSV", "HESSIAN", "AKX(2)", "AKX(3)", "MONO(3)",
                                  "PENCILS(2,2)", "THREE_TRIPLES", "NODAL(5)", "ONE_TRIPLE", "PLUS_ONE"])
def test_conjecture_on_catalog(name):
    assert all_ok(conjecture_check(lookup(name)))


@pytest.mark.parametrize("name", ["F3", "THREE_TRIPLES", "AKX(2)", "NODAL(5)", "PLUS_ONE"])
def test_curve_through_multiple_points(name):
    checks = curve_through_points(lookup(name))
    assert all_ok(checks)


def test_hessian_unconnected_points_on_one_line():
    A = hessian()
    p = next(lp for lp in A.lattice if lp.multiplicity == 4)
    Q = unconnected(A, p)
    L = carrier_line([q.point for q in Q])
    assert L is not None
    assert sum(q.multiplicity - 1 for q in Q) == A.d - 2 * p.multiplicity == 4
    report = thm1000_report(A, p)
    assert all_ok(report) and not any(c.status == NOT_MET for c in report)


def test_plus_one_strict_branch():
    A = lookup("PLUS_ONE")
    assert module_of(A.f).generator_degrees() == [3, 4, 4]
    p = next(lp for lp in A.lattice if lp.multiplicity == 3 and thm1000_report(A, lp)[0].status != NOT_MET)
    report = thm1000_report(A, p)
    assert all_ok(report)
    assert any("strict" in c.name and "d_3=4" in c.detail for c in report)


@pytest.mark.parametrize("name", ["NODAL(4)", "NODAL(5)", "ONE_TRIPLE", "F3", "SSV", "AKX(2)"])
def test_cover_families(name):
    assert all_ok(thm100_check(lookup(name)))


def test_cover_family_values():
    assert min_cover(lookup("ONE_TRIPLE")).N == 3
    for d in (4, 5):
        assert min_cover(lookup(f"NODAL({d})")).N == d - 1


def test_unconnected_bounds():
    A = lookup("F3")
    p = A.lattice.find(make_point(QQ, 0, 1, 1))
    checks = rkex10_bounds(A, p)
    assert all_ok(checks) and "4 vs 4" in checks[0].detail
    B = lookup("SSV")
    assert all_ok(rkex10_bounds(B, B.lattice.find(make_point(QQ, -1, 1, 1))))


@pytest.mark.parametrize("k,tau_value", [(2, 27), (3, 61)])
def test_akx_three_cases(k, tau_value):
    A = akx(k)
    assert tau(A) == tau_value
    p = next(lp for lp in A.lattice if lp.multiplicity == A.max_multiplicity())
    cases = {}
    for coeffs in [(0, 1, 2), (0, 0, 1), (0, 1, 0), (0, 1, -1)]:
        L = make_line(A.field, *coeffs)
        cases[coeffs] = line_case(A, p, L)
        assert all_ok(case_tau_identity(A, p, L))
    assert cases == {(0, 1, 2): 1, (0, 0, 1): 1, (0, 1, 0): 2, (0, 1, -1): 3}


def test_euler_identity_and_added_lines():
    A = hessian()
    p = next(lp for lp in A.lattice if lp.multiplicity == 4)
    checks = lem10_euler(A, p)
    assert all_ok(checks)
    assert "e=4" in checks[0].detail and "18 vs 18" in checks[1].detail
    for name in ("AKX(2)", "AKX(3)", "F3", "SSV", "PLUS_ONE"):
        B = lookup(name)
        m = B.max_multiplicity()
        for lp in B.lattice:
            if lp.multiplicity == m:
                assert all_ok(lem10_euler(B, lp)), name

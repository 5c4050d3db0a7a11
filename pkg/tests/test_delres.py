import pytest
import sympy as sp

from linarr.arrangement import Arrangement, make_line
from linarr.catalog import f3, lookup, nodal, random_arrangement, ssv, triangle
from linarr.checks import all_ok
from linarr.delres import (NotASyzygy, cor1G_check, delta_dd, exactness_check, line_to_x_matrix,
                           move_line_to_x, propG1, propG2, restriction_profile, u0, v0, verify_eqG7,
                           verify_eqG8)
from linarr.polyring import Derivation, HomPoly, parse_poly
from linarr.scalars import QQ
from linarr.syzygy import module_of

from .oracles import X, Y, Z, to_sympy


def test_line_moves_to_x():
    l = make_line(QQ, 2, -1, 3)
    M = line_to_x_matrix(l)
    assert l.poly().substitute(M) == HomPoly.var(QQ, 0)
    A = ssv()
    for L in range(A.d):
        B, _ = move_line_to_x(A, L)
        assert B.lattice.counts() == A.lattice.counts()


def test_u0_matches_formula():
    B, _ = move_line_to_x(f3(), 0)
    Bp = B.without(0)
    d = B.d
    for D in module_of(Bp.f).basis(2):
        img = u0(D, d)
        a, b, c = (to_sympy(p) for p in D.comps)
        want = [X * a - a * X / d, X * b - a * Y / d, X * c - a * Z / d]
        assert all(sp.expand(to_sympy(p) - w) == 0 for p, w in zip(img.comps, want))
        assert img.kills(B.f)


def test_v0_matches_formula():
    B, _ = move_line_to_x(f3(), 2)
    d = B.d
    for D in module_of(B.f).basis(3):
        img = v0(D, d)
        a, b, c = (to_sympy(p) for p in D.comps)
        a1 = sp.cancel(a / X)
        want_b = (b + a1 * Y / (d - 1)).subs(X, 0)
        want_c = (c + a1 * Z / (d - 1)).subs(X, 0)
        got = [to_sympy(p).subs({X: Y, Y: Z}, simultaneous=True) for p in img.comps]
        assert sp.expand(got[0] - want_b) == 0 and sp.expand(got[1] - want_c) == 0


def test_v0_rejects_non_syzygy():
    D = Derivation([HomPoly.var(QQ, 1), HomPoly.var(QQ, 0), HomPoly.var(QQ, 2)])
    with pytest.raises(NotASyzygy):
        v0(D, 4)


@pytest.mark.parametrize("name", ["TRIANGLE", "F3", "SSV", "AKX(2)", "THREE_TRIPLES", "NODAL(5)"])
def test_exactness_catalog(name):
    A = lookup(name)
    for L in range(A.d):
        assert all_ok(exactness_check(A, L))


def test_exactness_random():
    for seed in range(8):
        A = random_arrangement(seed, 4 + seed % 3)
        for L in range(A.d):
            assert all_ok(exactness_check(A, L))


def test_restriction_profile_multiplicities():
    B, _ = move_line_to_x(f3(), 0)
    prof = restriction_profile(B, 0)
    assert sorted(prof.mults) == [2, 3, 3]
    assert prof.f_dd().degree == B.d - 1
    dd = delta_dd(prof)
    assert dd.degree == prof.k - 1 and dd.kills(prof.f_dd())


def test_restriction_profile_requires_moved_line():
    with pytest.raises(ValueError):
        restriction_profile(Arrangement([make_line(QQ, 1, 1, 0), make_line(QQ, 0, 1, 0),
                                         make_line(QQ, 0, 0, 1)]), 0)


@pytest.mark.parametrize("name", ["TRIANGLE", "F3", "SSV", "AKX(2)", "HESSIAN", "PENCILS(3,4)",
                                  "THREE_TRIPLES", "NODAL(5)", "PLUS_ONE"])
def test_multirestriction_identities(name):
    A = lookup(name)
    for L in range(A.d):
        assert all_ok(verify_eqG7(A, L))
        B, _ = move_line_to_x(A, L)
        assert all_ok(verify_eqG8(restriction_profile(B, L), A.d))


@pytest.mark.parametrize("name", ["F3", "SSV", "THREE_TRIPLES", "ONE_TRIPLE"])
def test_deletion_and_restriction_of_local_derivations(name):
    A = lookup(name)
    for L in range(A.d):
        assert all_ok(propG1(A, L))
        assert all_ok(propG2(A, L))


def test_adding_a_line_to_a_curve():
    C = nodal(4).f
    assert all_ok(cor1G_check(C, make_line(QQ, 1, 2, 5)))
    conic = parse_poly("x^2 + y^2 - z^2", QQ)
    assert all_ok(cor1G_check(conic * HomPoly.var(QQ, 0), make_line(QQ, 1, 3, 7)))


def test_adding_a_component_line_rejected():
    with pytest.raises(ValueError):
        cor1G_check(triangle().f, make_line(QQ, 1, 0, 0))

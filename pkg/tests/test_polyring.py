import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from linarr import linalg
from linarr.polyring import (Derivation, HomPoly, NotDivisibleError, binary_distinct_roots, dim_s,
                             exact_div, monomials, parse_poly, poly_proportional, render_poly,
                             substitute_linear)
from linarr.scalars import QQ, make_cyclotomic

from .oracles import X, Y, Z, reduce_mod, to_sympy, T


def rand_poly(rng, K, deg, density=0.6):
    terms = {}
    for m in monomials(3, deg):
        if rng.random() < density:
            terms[m] = K.element([rng.randint(-4, 4) for _ in range(K.degree)])
    return HomPoly(K, 3, deg, terms)


def test_monomial_counts():
    assert all(len(monomials(3, k)) == dim_s(3, k) == (k + 1) * (k + 2) // 2 for k in range(8))
    assert dim_s(3, -1) == 0


@pytest.mark.parametrize("seed", range(8))
def test_product_matches_sympy(seed):
    rng = random.Random(seed)
    K = make_cyclotomic(3) if seed % 2 else QQ
    p, q = rand_poly(rng, K, rng.randint(0, 3)), rand_poly(rng, K, rng.randint(0, 3))
    got = to_sympy(p * q)
    want = sp.expand(to_sympy(p) * to_sympy(q))
    if K.degree > 1:
        want = reduce_mod(want, T ** 2 + T + 1)
    assert sp.expand(got - want) == 0


@pytest.mark.parametrize("seed", range(6))
def test_partials_match_sympy(seed):
    p = rand_poly(random.Random(seed), QQ, 4)
    for i, v in enumerate((X, Y, Z)):
        assert sp.expand(to_sympy(p.partial(i)) - sp.diff(to_sympy(p), v)) == 0


@pytest.mark.parametrize("seed", range(6))
def test_exact_division_recovers_factor(seed):
    rng = random.Random(seed)
    K = make_cyclotomic(4)
    p, q = rand_poly(rng, K, 3), rand_poly(rng, K, 2, 1.0)
    assert exact_div(p * q, q) == p


def test_exact_division_rejects_nondivisor():
    x, y = HomPoly.var(QQ, 0), HomPoly.var(QQ, 1)
    with pytest.raises(NotDivisibleError):
        (x * x + y * y).exact_div(x)


def test_euler_identity():
    p = rand_poly(random.Random(3), make_cyclotomic(5), 4)
    E = Derivation.euler(p.field)
    assert E.apply(p) == p.scale(4)


def test_substitution_composes():
    rng = random.Random(1)
    K = make_cyclotomic(3)
    def invertible(entry):
        while True:
            M = [[entry() for _ in range(3)] for _ in range(3)]
            if linalg.det(M):
                return M
    M = invertible(lambda: K.element([rng.randint(-2, 2), rng.randint(-2, 2)]))
    N = invertible(lambda: K.scalar(rng.randint(-2, 2)))
    MN = [[sum((M[i][k] * N[k][j] for k in range(3)), K.zero()) for j in range(3)] for i in range(3)]
    f = rand_poly(rng, K, 3)
    assert substitute_linear(substitute_linear(f, M), N) == substitute_linear(f, MN)


def test_parse_render_round_trip():
    K = make_cyclotomic(3)
    p = parse_poly("2*x^2*y - t*z^3", K)
    assert render_poly(p) == "2*x^2*y - t*z^3"
    assert parse_poly(render_poly(p), K) == p
    q = parse_poly("(x - y)*(x + y)")
    assert q == parse_poly("x^2 - y^2")


def test_proportionality():
    p = parse_poly("x^2 - y*z")
    assert poly_proportional(p, p.scale(Fraction(-3, 7)))
    assert not poly_proportional(p, parse_poly("x^2 + y*z"))


def test_distinct_roots_of_binary_form():
    y, z = HomPoly.var(QQ, 0, 2), HomPoly.var(QQ, 1, 2)
    p = y ** 3 * (y - z) ** 2 * (y + z)
    assert binary_distinct_roots(p) == 3
    assert binary_distinct_roots(z ** 4) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_derivation_is_a_derivation(seed):
    rng = random.Random(seed)
    p, q = rand_poly(rng, QQ, 2), rand_poly(rng, QQ, 3)
    D = Derivation([rand_poly(rng, QQ, 1) for _ in range(3)])
    assert D.apply(p * q) == D.apply(p) * q + p * D.apply(q)

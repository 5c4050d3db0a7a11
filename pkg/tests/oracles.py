"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm

import flint
import sympy as sp

X, Y, Z = sp.symbols("x y z")
T = sp.Symbol("t")


def to_sympy(p, field=None):
    """HomPoly -> sympy expression in x, y, z (and t for number fields)."""
    gens = [X, Y, Z][:p.nvars]
    expr = 0
    for e, c in p.terms.items():
        coeff = sum(sp.Rational(v.numerator, v.denominator) * T ** i for i, v in enumerate(c.c))
        mono = 1
        for g, k in zip(gens, e):
            mono *= g ** k
        expr += coeff * mono
    return sp.expand(expr)


def reduce_mod(expr, modulus_expr):
    """Reduce the t-coefficients of a polynomial in x, y, z modulo m(t)."""
    poly = sp.Poly(sp.expand(expr), X, Y, Z)
    out = 0
    for mono, coeff in poly.terms():
        r = sp.rem(sp.expand(coeff), modulus_expr, T)
        out += r * X ** mono[0] * Y ** mono[1] * Z ** mono[2]
    return sp.expand(out)


def lines_to_fractions(A):
    return [[c.c[0] for c in l.coords] for l in A.lines]


def brute_lattice(rows):
    """Multiplicities of intersection points of rational lines via sympy nullspaces."""
    groups = {}
    for i, j in combinations(range(len(rows)), 2):
        M = sp.Matrix([rows[i], rows[j]])
        v = M.nullspace()[0]
        k = next(a for a in v if a != 0)
        key = tuple(sp.nsimplify(a / k) for a in v)
        groups.setdefault(key, set()).update((i, j))
    return {k: len(v) for k, v in groups.items()}


# --- saturation oracle for the Jacobian module over Q ----------------------------------------

def _monomials(k):
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def _int_poly(f):
    den = 1
    for c in f.terms.values():
        den = lcm(den, c.c[0].denominator)
    return {e: int(c.c[0] * den) for e, c in f.terms.items()}


def _partials(f):
    out = []
    for i in range(3):
        d = {}
        for e, c in f.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                d[tuple(e2)] = d.get(tuple(e2), 0) + c * e[i]
        out.append(d)
    return out


def _jacobian_rows(parts, deg_f, D):
    idx = {m: i for i, m in enumerate(_monomials(D))}
    rows = []
    if D - (deg_f - 1) < 0:
        return rows, idx
    for p in parts:
        for m in _monomials(D - deg_f + 1):
            row = [0] * len(idx)
            for e, c in p.items():
                row[idx[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] += c
            rows.append(row)
    return rows, idx


def _rank(rows):
    if not rows:
        return 0
    return flint.fmpz_mat(rows).rank()


def saturation_n(f, k: int, M: int | None = None) -> int:
    """dim (I_f / J_f)_k with (I_f)_k = {g : g S_M in J_f}; f a rational HomPoly in x, y, z."""
    fi = _int_poly(f)
    d = f.degree
    M = 3 * d if M is None else M
    parts = _partials(fi)
    D = k + M
    rows, idx = _jacobian_rows(parts, d, D)
    R, den, rank = flint.fmpz_mat(rows).rref()
    den = int(den)
    Rl = [[int(v) for v in r] for r in R.tolist()[:rank]]
    pivots = [next(j for j, v in enumerate(r) if v) for r in Rl]
    pivot_row = dict(zip(pivots, range(rank)))
    free = [j for j in range(len(idx)) if j not in pivot_row]
    fpos = {j: i for i, j in enumerate(free)}

    def normal_form(col):
        # scaled by den
        if col in fpos:
            v = [0] * len(free)
            v[fpos[col]] = den
            return v
        r = Rl[pivot_row[col]]
        return [-r[j] for j in free]

    sk = _monomials(k)
    big = []
    for e in sk:
        row = []
        for m in _monomials(M):
            row.extend(normal_form(idx[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]))
        big.append(row)
    dim_i = len(sk) - _rank(big) if free else len(sk)
    jrows, _ = _jacobian_rows(parts, d, k)
    dim_j = _rank(jrows)
    return dim_i - dim_j


def sympy_rank(rows):
    return sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in r] for r in rows]).rank()


def frac(v) -> Fraction:
    return Fraction(v)


def syzygy_dim_sympy(f, j: int) -> int:
    """dim of {(a, b, c) of degree j : a f_x + b f_y + c f_z = 0} for rational f, via sympy."""
    F = to_sympy(f)
    grads = [sp.diff(F, v) for v in (X, Y, Z)]
    monos = [X ** a * Y ** b * Z ** c for a, b, c in _monomials(j)]
    unknowns = sp.symbols(f"u0:{3 * len(monos)}")
    expr = 0
    for i, g in enumerate(grads):
        expr += g * sum(u * m for u, m in zip(unknowns[i * len(monos):(i + 1) * len(monos)], monos))
    coeffs = sp.Poly(sp.expand(expr), X, Y, Z).coeffs()
    M = sp.Matrix([[sp.diff(c, u) for u in unknowns] for c in coeffs])
    return len(unknowns) - M.rank()

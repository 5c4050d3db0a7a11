"""Exact linear algebra over Q and over number fields.

Rational matrices go through FLINT when available; ``LINARR_LINALG=python``
forces the pure Python Gauss-Jordan route, which the tests use as a
cross-check.  A K-linear problem over K = Q[t]/(m) of degree n is solved by
restriction of scalars: each K-entry becomes an n x n rational block.
Coordinates are ordered column-block major, so K-column j owns Q-columns
j*n .. j*n + n - 1.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Sequence

from .scalars import FieldScalar, NumberField

try:
    import flint
except ImportError:  # pragma: no cover
    flint = None


def _backend(backend: str | None) -> str:
    if backend is None:
        backend = os.environ.get("LINARR_LINALG", "flint")
    if backend == "flint" and flint is None:
        backend = "python"
    return backend


def _int_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            q = v.denominator
            if q != 1:
                den = lcm(den, q)
        if den == 1:
            out.append([v.numerator for v in row])
        else:
            out.append([v.numerator * (den // v.denominator) for v in row])
    return out


def _flint_rows(M, count: int | None = None) -> list[list[int]]:
    rows = M.tolist()
    return [[int(v) for v in r] for r in (rows if count is None else rows[:count])]


# --- pure Python route --------------------------------------------------------

def _py_rref(rows: Sequence[Sequence], ncols: int):
    m = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


# --- rational API ----------------------------------------------------------------

def q_rref(rows: Sequence[Sequence], ncols: int | None = None, backend: str | None = None):
    """Reduced row echelon form: (nonzero rows as Fractions, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    if _backend(backend) == "python":
        return _py_rref(rows, ncols)
    R, den, rank = flint.fmpz_mat(_int_rows(rows)).rref()
    den = int(den)
    out, pivots = [], []
    for row in _flint_rows(R, rank):
        piv = next(j for j, v in enumerate(row) if v)
        pivots.append(piv)
        out.append([Fraction(v, den) for v in row])
    return out, pivots


def q_rank(rows: Sequence[Sequence], backend: str | None = None) -> int:
    if not rows or not len(rows[0]):
        return 0
    if _backend(backend) == "python":
        return len(_py_rref(rows, len(rows[0]))[1])
    return flint.fmpz_mat(_int_rows(rows)).rank()


def q_nullspace(rows: Sequence[Sequence], ncols: int, backend: str | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    if _backend(backend) == "flint":
        X, nullity = flint.fmpz_mat(_int_rows(rows)).nullspace()
        cols = _flint_rows(X.transpose(), nullity)
        return [[Fraction(v) for v in c] for c in cols]
    red, pivots = _py_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


# --- restriction of scalars ----------------------------------------------------------

def _mult_block(a: FieldScalar) -> list[list[Fraction]]:
    """Rows indexed by output coordinate l, columns by i: coordinate l of a * t^i."""
    n = a.field.degree
    table = a.field._reduce
    block = [[Fraction(0)] * n for _ in range(n)]
    for j, aj in enumerate(a.c):
        if not aj:
            continue
        for i in range(n):
            for l, r in enumerate(table[i + j]):
                if r:
                    block[l][i] += aj * r
    return block


def expand_equations(field: NumberField, rows: Sequence[Sequence[FieldScalar]], ncols: int):
    """Rational system equivalent to the K-linear system rows . x = 0."""
    n = field.degree
    if n == 1:
        return [[v.c[0] for v in row] for row in rows]
    out = []
    zero_row = [Fraction(0)] * n
    cache: dict = {}
    for row in rows:
        blocks = []
        for v in row:
            if not v:
                blocks.append(None)
                continue
            b = cache.get(v.c)
            if b is None:
                b = cache[v.c] = _mult_block(v)
            blocks.append(b)
        for l in range(n):
            q = []
            for b in blocks:
                q.extend(zero_row if b is None else b[l])
            out.append(q)
    return out


def expand_vectors(field: NumberField, vectors: Sequence[Sequence[FieldScalar]]):
    """Rational spanning set for the K-span of the given vectors: t^i * v for i < n."""
    n = field.degree
    if n == 1:
        return [[v.c[0] for v in vec] for vec in vectors]
    zero_col = [Fraction(0)] * n
    cache: dict = {}
    out = []
    for vec in vectors:
        cols = []
        for v in vec:
            if not v:
                cols.append(None)
                continue
            b = cache.get(v.c)
            if b is None:
                blk = _mult_block(v)
                b = cache[v.c] = [[blk[l][i] for l in range(n)] for i in range(n)]
            cols.append(b)
        for i in range(n):
            row = []
            for b in cols:
                row.extend(zero_col if b is None else b[i])
            out.append(row)
    return out


def collapse_vector(field: NumberField, qvec: Sequence[Fraction]) -> list[FieldScalar]:
    n = field.degree
    return [FieldScalar(field, tuple(Fraction(v) for v in qvec[j * n:(j + 1) * n]))
            for j in range(len(qvec) // n)]


def _k_basis_from_rref(field: NumberField, red, pivots) -> list[list[FieldScalar]]:
    n = field.degree
    return [collapse_vector(field, row) for row, p in zip(red, pivots) if p % n == 0]


def k_rank(field: NumberField, vectors: Sequence[Sequence[FieldScalar]], backend: str | None = None) -> int:
    if not vectors:
        return 0
    q = q_rank(expand_vectors(field, vectors), backend)
    assert q % field.degree == 0
    return q // field.degree


def k_row_basis(field: NumberField, vectors: Sequence[Sequence[FieldScalar]],
                backend: str | None = None) -> list[list[FieldScalar]]:
    """Reduced K-basis of the span of ``vectors``."""
    if not vectors:
        return []
    ncols = len(vectors[0]) * field.degree
    red, pivots = q_rref(expand_vectors(field, vectors), ncols, backend)
    return _k_basis_from_rref(field, red, pivots)


def k_kernel(field: NumberField, rows: Sequence[Sequence[FieldScalar]], ncols: int,
             backend: str | None = None) -> list[list[FieldScalar]]:
    """K-basis of {x in K^ncols : rows . x = 0}."""
    n = field.degree
    if not rows:
        one, zero = field.one(), field.zero()
        return [[one if i == j else zero for j in range(ncols)] for i in range(ncols)]
    qeq = expand_equations(field, rows, ncols)
    if _backend(backend) == "flint":
        X, nullity = flint.fmpz_mat(_int_rows(qeq)).nullspace()
        if nullity == 0:
            return []
        R, den, rank = flint.fmpz_mat(_flint_rows(X.transpose(), nullity)).rref()
        den = int(den)
        out = []
        for row in _flint_rows(R, rank):
            piv = next(j for j, v in enumerate(row) if v)
            if piv % n == 0:
                out.append([FieldScalar(field, tuple(Fraction(v, den) for v in row[j * n:(j + 1) * n]))
                            for j in range(ncols)])
        return out
    ker = q_nullspace(qeq, ncols * n, backend)
    if not ker:
        return []
    red, pivots = q_rref(ker, ncols * n, backend)
    return _k_basis_from_rref(field, red, pivots)


def k_kernel_dim(field: NumberField, rows: Sequence[Sequence[FieldScalar]], ncols: int,
                 backend: str | None = None) -> int:
    if not rows:
        return ncols
    q = q_rank(expand_equations(field, rows, ncols), backend)
    return ncols - q // field.degree


def det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination over any commutative ring with exact division."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return m[0][0] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = v if prev is None else _exact(v, prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _exact(v, d):
    if hasattr(v, "exact_div"):
        return v.exact_div(d)
    return v / d

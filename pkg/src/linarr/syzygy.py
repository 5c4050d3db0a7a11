"""The graded module of derivations killing f, degree by degree.

For a reduced form f of degree d we compute kernels of the K-linear maps
S_k^n -> S_{k+d-1}, (a_1, ..., a_n) -> sum a_i * df/dx_i, minimal generator
degrees, minimal relation degrees, and the Hilbert function of the
saturation defect of the Jacobian ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb
from typing import Sequence

from .checks import Check
from .linalg import k_kernel, k_kernel_dim, k_rank
from .polyring import Derivation, HomPoly, dim_s, monomial_index, monomials
from .scalars import FieldScalar


def binom2(n: int) -> int:
    """n(n-1)/2 as a polynomial in n (so binom2(-1) == 1)."""
    return n * (n - 1) // 2


def thmd_value(tau: int, d: int, j: int) -> int:
    """Combinatorial dimension tau + 3 C(j+2,2) - C(d+j+1,2), valid for j >= d-3."""
    return tau + 3 * binom2(j + 2) - binom2(d + j + 1)


def shift_vector(vec: Sequence[FieldScalar], block_degrees: Sequence[int], var: int,
                 nvars: int) -> list[FieldScalar]:
    """Multiply a vector of ⊕ S_{e_i} (monomial coordinates) by one variable."""
    out: list[FieldScalar] = []
    pos = 0
    zero = vec[0].field.zero() if vec else None
    for e in block_degrees:
        src = monomials(nvars, e)
        dst_index = monomial_index(nvars, e + 1)
        block = [zero] * dim_s(nvars, e + 1)
        for m, c in zip(src, vec[pos:pos + len(src)]):
            if c:
                t = list(m)
                t[var] += 1
                block[dst_index[tuple(t)]] = c
        out.extend(block)
        pos += len(src)
    return out


class DerivationModule:
    """Graded pieces of D_0(f) with cached kernels."""

    def __init__(self, f: HomPoly):
        if not f.terms or f.degree < 1:
            raise ValueError("need a nonconstant form")
        self.f = f
        self.d = f.degree
        self.field = f.field
        self.nvars = f.nvars
        self.partials = [f.partial(i) for i in range(self.nvars)]
        self._bases: dict[int, list[Derivation]] = {}
        self._dims: dict[int, int] = {}
        self._gens: list[Derivation] | None = None
        self._rels: list[int] | None = None

    # single degrees ------------------------------------------------------------
    def _matrix(self, k: int):
        n = self.nvars
        target = monomial_index(n, k + self.d - 1)
        src = monomials(n, k)
        zero = self.field.zero()
        rows = [[zero] * (n * len(src)) for _ in range(len(target))]
        for i, p in enumerate(self.partials):
            base = i * len(src)
            for j, m in enumerate(src):
                for e, c in p.terms.items():
                    rows[target[tuple(a + b for a, b in zip(e, m))]][base + j] = c
        return rows, n * len(src)

    def dim(self, k: int) -> int:
        if k < 0:
            return 0
        if k not in self._dims:
            if k in self._bases:
                self._dims[k] = len(self._bases[k])
            else:
                rows, ncols = self._matrix(k)
                self._dims[k] = k_kernel_dim(self.field, rows, ncols)
        return self._dims[k]

    def basis(self, k: int) -> list[Derivation]:
        if k < 0:
            return []
        if k not in self._bases:
            rows, ncols = self._matrix(k)
            vecs = k_kernel(self.field, rows, ncols)
            self._bases[k] = [Derivation.from_vector(self.field, self.nvars, k, v) for v in vecs]
            self._dims[k] = len(vecs)
        return self._bases[k]

    def mdr(self) -> int:
        k = 0
        while True:
            if self.dim(k) > 0:
                return k
            k += 1
            if k > self.d:
                raise AssertionError("no syzygy found up to degree d")

    # generators --------------------------------------------------------------------
    def generators(self, top: int | None = None) -> list[Derivation]:
        """Minimal homogeneous generators, degree by degree up to ``top`` (default d - 2)."""
        if top is None and self._gens is not None:
            return self._gens
        n = self.nvars
        gens: list[Derivation] = []
        default = top is None
        top = max(self.d - 2, self.mdr()) if top is None else top
        for k in range(self.mdr(), top + 1):
            current = self.basis(k)
            if not current:
                continue
            span = []
            for g in self.basis(k - 1):
                v = g.to_vector()
                for var in range(n):
                    span.append(shift_vector(v, [k - 1] * n, var, n))
            rank = k_rank(self.field, span) if span else 0
            if rank == len(current):
                continue
            chosen = []
            for cand in current:
                trial = span + [c.to_vector() for c in chosen] + [cand.to_vector()]
                if k_rank(self.field, trial) > rank + len(chosen):
                    chosen.append(cand)
                    if rank + len(chosen) == len(current):
                        break
            gens.extend(chosen)
        if default:
            self._gens = gens
        return gens

    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.generators()]

    # relations -------------------------------------------------------------------
    def _relation_matrix(self, k: int, gens: Sequence[Derivation]):
        n = self.nvars
        target = monomial_index(n, k)
        size = len(target)
        zero = self.field.zero()
        cols = []
        for g in gens:
            for m in monomials(n, k - g.degree):
                col = [zero] * (n * size)
                for i, comp in enumerate(g.comps):
                    for e, c in comp.terms.items():
                        col[i * size + target[tuple(a + b for a, b in zip(e, m))]] = c
                cols.append(col)
        rows = [list(r) for r in zip(*cols)] if cols else []
        return rows, len(cols)

    def relation_degrees(self, top: int | None = None) -> list[int]:
        """Minimal generator degrees of the kernel of ⊕ S(-d_i) -> D_0(f)."""
        if self._rels is not None and top is None:
            return self._rels
        gens = self.generators()
        n = self.nvars
        top = self.d - 1 if top is None else top
        rels: list[int] = []
        prev: list[list[FieldScalar]] = []
        prev_blocks: list[int] = []
        for k in range(min(g.degree for g in gens), top + 1):
            blocks = [k - g.degree for g in gens if k - g.degree >= 0]
            active = [g for g in gens if k - g.degree >= 0]
            rows, ncols = self._relation_matrix(k, active)
            ker = k_kernel(self.field, rows, ncols) if ncols else []
            span = []
            for v in prev:
                # pad blocks that become active at this degree
                for var in range(n):
                    shifted = shift_vector(v, prev_blocks, var, n)
                    span.append(shifted + [self.field.zero()] * (ncols - len(shifted)))
            rank = k_rank(self.field, span) if span else 0
            rels.extend([k] * (len(ker) - rank))
            prev, prev_blocks = ker, blocks
        if top == self.d - 1:
            expected = len(gens) - 2 if n == 3 else len(gens) - 1
            if len(rels) != expected:
                raise AssertionError(f"found {len(rels)} relations, expected {expected}")
            self._rels = rels
        return rels

    def epsilons(self) -> list[int]:
        degs = sorted(self.generator_degrees())
        rels = sorted(self.relation_degrees())
        return [r - degs[j + 2] for j, r in enumerate(rels)]


@lru_cache(maxsize=128)
def module_of(f: HomPoly) -> DerivationModule:
    return DerivationModule(f)


def graded_piece(f: HomPoly, k: int) -> list[Derivation]:
    return module_of(f).basis(k)


def mdr(f: HomPoly) -> int:
    return module_of(f).mdr()


def generator_degrees(f: HomPoly) -> list[int]:
    return module_of(f).generator_degrees()


def relation_degrees(f: HomPoly) -> tuple[list[int], list[int]]:
    m = module_of(f)
    return m.relation_degrees(), m.epsilons()


class SigmaUndefined(ValueError):
    pass


def sigma_from_resolution(f: HomPoly) -> int:
    rels = module_of(f).relation_degrees()
    if not rels:
        raise SigmaUndefined("σ undefined (N(f)=0)")
    return 2 * (f.degree - 1) - max(rels)


@dataclass
class SyzygyProfile:
    dims: dict
    mdr: int
    gen_degrees: list
    rel_degrees: list
    epsilons: list
    sigma: int | None
    free: bool
    exponents: tuple | None


def profile(f: HomPoly) -> SyzygyProfile:
    m = module_of(f)
    d = f.degree
    dims = {k: m.dim(k) for k in range(d)}
    gens = m.generator_degrees()
    rels, eps = relation_degrees(f)
    free = len(gens) == 2
    return SyzygyProfile(dims, m.mdr(), gens, rels, eps,
                         None if free else 2 * (d - 1) - max(rels),
                         free, (gens[0], gens[1]) if free else None)


# --- arrangement-level checks ------------------------------------------------------

def dim_d0(A, j: int) -> int:
    """dim D_0(f)_j, computed for j <= d-1 and from the combinatorial formula beyond."""
    from .arrangement import tau
    if j < 0:
        return 0
    if j <= A.d - 1:
        return module_of(A.f).dim(j)
    return thmd_value(tau(A), A.d, j)


@dataclass
class NHilbert:
    values: dict
    T: int

    def __getitem__(self, j: int) -> int:
        return self.values.get(j, 0)

    def support(self) -> list[int]:
        return [j for j, v in sorted(self.values.items()) if v]

    def initial_degree(self) -> int | None:
        s = self.support()
        return s[0] if s else None


def n_hilbert(A) -> NHilbert:
    from .arrangement import tau
    d = A.d
    t = tau(A)
    T = 3 * d - 6
    values = {}
    for j in range(0, T + 1):
        k = j - d
        rhs = t + 3 * binom2(k + 3) - binom2(d + k + 2)
        n = dim_d0(A, k + 1) + dim_d0(A, d - 5 - k) - rhs
        if n < 0:
            raise AssertionError(f"negative Hilbert value at {j}")
        values[j] = n
    return NHilbert(values, T)


def is_free(A) -> tuple[bool, tuple | None]:
    from .arrangement import tau
    m = module_of(A.f)
    gens = m.generator_degrees()
    d, d1 = A.d, m.mdr()
    by_gens = len(gens) == 2
    by_tau = tau(A) == (d - 1) ** 2 - d1 * (d - 1 - d1)
    if by_gens != by_tau:
        raise AssertionError("freeness tests disagree")
    return by_gens, ((d1, d - 1 - d1) if by_gens else None)


def dimension_formula_check(A) -> list[Check]:
    from .arrangement import tau
    d = A.d
    t = tau(A)
    m = module_of(A.f)
    out = []
    for j in (d - 3, d - 2, d - 1):
        if j < 0:
            continue
        got, want = m.dim(j), thmd_value(t, d, j)
        out.append(Check(f"dim D_{j}", got == want, f"{got} vs {want}"))
    s = sum(comb(lp.multiplicity - 1, 2) for lp in A.lattice)
    only_double = all(lp.multiplicity == 2 for lp in A.lattice)
    if d >= 3:
        got = m.dim(d - 3)
        out.append(Check("dim D_{d-3} = sum C(m_p-1,2)", got == s, f"{got} vs {s}"))
        out.append(Check("dim D_{d-3} = 0 iff nodal", (got == 0) == only_double))
    got = m.dim(d - 2)
    out.append(Check("dim D_{d-2} = sum C(m_p-1,2) + d-1", got == s + d - 1, f"{got} vs {s + d - 1}"))
    out.append(Check("dim D_{d-2} = d-1 iff nodal", (got == d - 1) == only_double))
    return out


def cor20_check(A) -> list[Check]:
    d = A.d
    m = module_of(A.f)
    out = []
    for j in range(4, d + 1):
        bound = sum(comb(lp.multiplicity - j + 2, 2) for lp in A.lattice if lp.multiplicity >= j)
        got = m.dim(d - j)
        out.append(Check(f"dim D_{d - j} >= {bound}", got >= bound, str(got)))
    return out


def castelnuovo_check(A) -> list[Check]:
    m = module_of(A.f)
    d = A.d
    out = [Check("d_s <= d-2", max(m.generator_degrees()) <= d - 2)]
    rels, eps = relation_degrees(A.f)
    if rels:
        out.append(Check("max relation degree - 1 <= d-2", max(rels) - 1 <= d - 2))
    out.append(Check("epsilon_j >= 1", all(e >= 1 for e in eps)))
    return out


def nhilbert_check(A) -> list[Check]:
    N = n_hilbert(A)
    T = N.T
    d = A.d
    out = [Check("duality", all(N[k] == N[T - k] for k in range(T + 1)))]
    mid = -(-T // 2)
    up = all(N[k] <= N[k + 1] for k in range(0, mid))
    down = all(N[k] >= N[k + 1] for k in range(mid, T))
    out.append(Check("unimodality", up and down))
    out.append(Check("n_{2d-4} = 0", N[2 * d - 4] == 0))
    free, _ = is_free(A)
    if free:
        out.append(Check("free => N(f) = 0", not N.support()))
    else:
        sig = sigma_from_resolution(A.f)
        out.append(Check("initial degree = sigma", N.initial_degree() == sig,
                         f"{N.initial_degree()} vs {sig}"))
        out.append(Check("sigma >= d-1", sig >= d - 1))
    return out

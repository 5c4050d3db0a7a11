"""Suite dispatch, reports and the one-page analysis of an arrangement."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import cover, delres, localder, syzygy
from .arrangement import Arrangement, collinear, connected, tau
from .catalog import ZIEGLER_NOTE
from .checks import FAIL, INCONCLUSIVE, NOT_MET, PASS, Check
from .polyring import render_poly


@dataclass
class VerifyReport:
    suite: str
    target: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, NOT_MET: 0, INCONCLUSIVE: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def records(self) -> list[dict]:
        rows = [{"suite": self.suite, "target": self.target, "check": c.name,
                 "status": c.status, "detail": c.detail} for c in self.checks]
        summary = {"suite": self.suite, "target": self.target, "check": "summary",
                   "status": PASS if self.ok else FAIL,
                   "detail": " ".join(f"{k}:{v}" for k, v in self.counts().items()),
                   "seconds": f"{self.seconds:.3f}"}
        return rows + [summary]


def render_records(rows: list[dict]) -> str:
    return "\n".join("\t".join(f"{k}={v}" for k, v in row.items()) for row in rows)


def render_report_text(rep: VerifyReport) -> str:
    out = [f"== {rep.suite} on {rep.target} =="]
    for c in rep.checks:
        tail = f"  ({c.detail})" if c.detail else ""
        out.append(f"[{c.status}] {c.name}{tail}")
    counts = ", ".join(f"{v} {k}" for k, v in rep.counts().items() if v)
    out.append(f"-> {'PASS' if rep.ok else 'FAIL'}: {counts} in {rep.seconds:.2f}s")
    return "\n".join(out)


# --- per-suite drivers ----------------------------------------------------------------------

@dataclass
class Options:
    max_degree: int | None = None
    partner: Arrangement | None = None
    samples: int = 2


def _labelled(prefix: str, checks: list[Check]) -> list[Check]:
    return [Check(f"{prefix}: {c.name}", c.status, c.detail) for c in checks]


def _not_pencil(fn):
    def run(A: Arrangement, opts: Options) -> list[Check]:
        if A.is_pencil():
            return [Check("arrangement is not a pencil", NOT_MET)]
        return fn(A, opts)
    return run


def _free_tau(A, opts):
    free, exps = syzygy.is_free(A)
    return [Check("s = 2 iff tau = (d-1)^2 - d_1(d-1-d_1)", True, f"free={free} exponents={exps}")]


@_not_pencil
def _thm1(A, opts):
    out = []
    for lp in A.lattice:
        out += _labelled(str(lp.point), localder.check_thm1_properties(A, lp, opts.samples))
    return out


def thm3_triples(A: Arrangement) -> list[tuple]:
    """Non-collinear triples of points of multiplicity >= 3, not all joined by lines of A."""
    big = [lp for lp in A.lattice if lp.multiplicity >= 3]
    out = []
    for t in combinations(big, 3):
        if collinear([lp.point for lp in t]):
            continue
        joins = sum(connected(A, a.point, b.point) for a, b in combinations(t, 2))
        if joins < 3:
            out.append(t)
    return out


@_not_pencil
def _thm3(A, opts):
    triples = thm3_triples(A)
    if not triples:
        return [Check("three non-collinear points of multiplicity >= 3 with a join missing", NOT_MET)]
    out = []
    for t in triples[:3]:
        out += _labelled(" ".join(str(lp.point) for lp in t), localder.span_thm3(A, *t))
    return out


@_not_pencil
def _prop40(A, opts):
    m = A.max_multiplicity()
    q = next(lp for lp in A.lattice if lp.multiplicity == m)
    return localder.verify_prop40(A, q)


def _each_line(check):
    @_not_pencil
    def run(A, opts):
        out = []
        for L in range(A.d):
            out += _labelled(f"L={A.lines[L]}", check(A, L, opts))
        return out
    return run


def _eqG8(A, L, opts):
    B, _ = delres.move_line_to_x(A, L)
    return delres.verify_eqG8(delres.restriction_profile(B, L), A.d)


def _cor1G(A, L, opts):
    rest = A.without(L)
    return delres.cor1G_check(rest.f, A.lines[L], top_extra=2)


@_not_pencil
def _thm1000(A, opts):
    d1 = syzygy.mdr(A.f)
    pts = [lp for lp in A.lattice if cover._hypothesis_1000(A, lp, d1)]
    if not pts:
        return [Check("a point with m_p <= d_1 + 1 < d - m_p + 1", NOT_MET, f"d_1={d1}")]
    out = []
    for lp in pts:
        out += _labelled(str(lp.point), cover.thm1000_report(A, lp))
    return out


@_not_pencil
def _rkex10(A, opts):
    out = []
    for lp in A.lattice:
        Q = cover.unconnected(A, lp)
        if cover.carrier_line([q.point for q in Q]) is not None:
            out += _labelled(str(lp.point), cover.rkex10_bounds(A, lp))
    return out or [Check("unconnected points spanning a line", NOT_MET)]


@_not_pencil
def _lem10(A, opts):
    m = A.max_multiplicity()
    out = []
    for lp in A.lattice:
        if lp.multiplicity != m:
            continue
        out += _labelled(str(lp.point), cover.lem10_euler(A, lp))
        L = cover.carrier_line([q.point for q in cover.unconnected(A, lp)])
        if L is not None:
            out += _labelled(f"{lp.point} L={L}", cover.case_tau_identity(A, lp, L))
    return out


def _thmD2(A, opts):
    if opts.partner is None:
        return [Check("partner arrangement supplied", NOT_MET, ZIEGLER_NOTE)]
    B = opts.partner
    same = sorted(lp.multiplicity for lp in A.lattice) == sorted(lp.multiplicity for lp in B.lattice)
    a5, b5 = syzygy.module_of(A.f).dim(5), syzygy.module_of(B.f).dim(5)
    return [Check("same point multiplicities", same, "external data"),
            Check("dim D_0(f)_5 differs", a5 != b5, f"{a5} vs {b5}; external data")]


SUITES: dict[str, Callable[[Arrangement, Options], list[Check]]] = {
    "thmD": lambda A, o: syzygy.dimension_formula_check(A),
    "cor20": lambda A, o: syzygy.cor20_check(A),
    "castelnuovo": lambda A, o: syzygy.castelnuovo_check(A),
    "nhilbert": lambda A, o: syzygy.nhilbert_check(A),
    "free-tau": _free_tau,
    "thmD2": _thmD2,
    "thm1": _thm1,
    "thm2": _not_pencil(lambda A, o: localder.span_thm2(A)),
    "thm3": _thm3,
    "thmG-span": lambda A, o: localder.span_thmG(A),
    "thm4": lambda A, o: localder.freeness_thm4(A),
    "prop4": _not_pencil(lambda A, o: localder.prop4_check(A)),
    "prop40": _prop40,
    "propthm10": _not_pencil(lambda A, o: localder.tangency_checks(A)),
    "thm1G-exact": _each_line(lambda A, L, o: delres.exactness_check(A, L, o.max_degree)),
    "propG1": _each_line(lambda A, L, o: delres.propG1(A, L)),
    "propG2": _each_line(lambda A, L, o: delres.propG2(A, L)),
    "eqG7": _each_line(lambda A, L, o: delres.verify_eqG7(A, L)),
    "eqG8": _each_line(_eqG8),
    "cor1G": _each_line(_cor1G),
    "conj10": lambda A, o: cover.conjecture_check(A),
    "cor101": _not_pencil(lambda A, o: cover.curve_through_points(A)),
    "thm1000": _thm1000,
    "thm100": _not_pencil(lambda A, o: cover.thm100_check(A)),
    "rkex10": _rkex10,
    "lem10": _lem10,
}


def suite_ids() -> list[str]:
    return list(SUITES) + ["full"]


def verify(A: Arrangement, suite: str, opts: Options | None = None) -> list[VerifyReport]:
    """Run one suite, or every suite for ``full``; internal disagreements surface as failures."""
    opts = opts or Options()
    if suite == "full":
        names = [s for s in SUITES if s != "thmD2" or opts.partner is not None]
    elif suite in SUITES:
        names = [suite]
    else:
        raise KeyError(f"unknown suite {suite!r}")
    reports = []
    for name in names:
        start = time.perf_counter()
        try:
            checks = SUITES[name](A, opts)
        except AssertionError as exc:
            checks = [Check("internal consistency", FAIL, str(exc))]
        reports.append(VerifyReport(name, A.name or f"{A.d} lines", checks, time.perf_counter() - start))
    return reports


# --- analysis ------------------------------------------------------------------------------

def analyze(A: Arrangement, max_degree: int | None = None) -> list[tuple[str, str, str]]:
    """(section, key, value) facts describing A; text and records renderings share this list."""
    facts: list[tuple[str, str, str]] = []

    def put(section, key, value):
        facts.append((section, key, str(value)))

    put("arrangement", "name", A.name)
    put("arrangement", "field", A.field.render())
    put("arrangement", "d", A.d)
    for i, l in enumerate(A.lines):
        put("arrangement", f"line.{i}", l)
    put("lattice", "counts", " ".join(f"{m}:{c}" for m, c in A.lattice.counts().items()))
    put("lattice", "tau", tau(A))
    put("lattice", "max_multiplicity", A.max_multiplicity())
    for lp in A.lattice:
        put("lattice", f"point.{lp.point}", lp.multiplicity)
    if A.is_pencil():
        put("syzygy", "pencil", True)
        return facts

    mod = syzygy.module_of(A.f)
    top = A.d - 1 if max_degree is None else max_degree
    for k in range(0, top + 1):
        put("syzygy", f"dim.{k}", mod.dim(k))
    prof = syzygy.profile(A.f)
    put("syzygy", "mdr", prof.mdr)
    put("syzygy", "generators", ",".join(map(str, prof.gen_degrees)))
    put("syzygy", "relations", ",".join(map(str, prof.rel_degrees)))
    put("syzygy", "epsilons", ",".join(map(str, prof.epsilons)))
    put("syzygy", "sigma", prof.sigma)
    free, exps = syzygy.is_free(A)
    put("syzygy", "free", free)
    put("syzygy", "exponents", ",".join(map(str, exps)) if exps else None)
    nh = syzygy.n_hilbert(A)
    put("nhilbert", "T", nh.T)
    put("nhilbert", "values", " ".join(str(nh[j]) for j in range(nh.T + 1)))

    rho = localder.default_rho(A)
    put("local", "rho", f"({', '.join(render_poly(c) for c in rho.comps)})")
    for lp in A.lattice:
        if lp.multiplicity >= A.d:
            continue
        D = localder.tilde(A, lp)
        put("local", f"degree.{lp.point}", D.degree)
        g = localder.g_p(A, rho, lp)
        put("local", f"g_p.{lp.point}", render_poly(g) if g.terms else "0")

    res = cover.cover_of(A)
    put("cover", "N", res.N)
    put("cover", "N0", res.N0)
    put("cover", "witnessN", "; ".join(str(l) for l in res.witnessN))
    put("cover", "witnessN0", "; ".join(str(l) for l in res.witnessN0))
    put("cover", "conjecture", "holds" if res.N <= prof.mdr + 1 else "potential counterexample")
    return facts


def render_facts_text(facts) -> str:
    out, section = [], None
    for sec, key, value in facts:
        if sec != section:
            out.append(f"[{sec}]")
            section = sec
        out.append(f"  {key}: {value}")
    return "\n".join(out)


def render_facts_records(facts) -> str:
    return "\n".join(f"section={s}\tkey={k}\tvalue={v}" for s, k, v in facts)

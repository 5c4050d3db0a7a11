import pytest

from linarr.arrangement import tau
from linarr.catalog import ZIEGLER_NOTE, buildable, catalog, lookup, pencils, random_arrangement
from linarr.checks import FAIL, NOT_MET, PASS, Check
from linarr.cover import min_cover
from linarr.harness import (Options, VerifyReport, analyze, render_facts_records, render_facts_text,
                            render_records, suite_ids, verify)
from linarr.syzygy import generator_degrees, is_free, mdr


def test_catalog_has_enough_entries():
    names = [e.name for e in catalog()]
    assert len(names) >= 8 and len(set(names)) == len(names)
    assert "ZIEGLER" in names
    with pytest.raises(LookupError):
        lookup("ZIEGLER")
    assert len(buildable()) == len(names) - 1


@pytest.mark.parametrize("entry", [e for e in catalog() if e.expected], ids=lambda e: e.name)
def test_catalog_expected_values(entry):
    A = entry.build()
    for key, want in entry.expected.items():
        if key == "tau":
            got = tau(A)
        elif key == "exponents":
            got = is_free(A)[1]
        elif key == "free":
            got = is_free(A)[0]
        elif key == "mdr":
            got = mdr(A.f)
        elif key == "generators":
            got = tuple(generator_degrees(A.f))
        elif key == "N":
            got = min_cover(A).N
        elif key == "N0":
            got = min_cover(A).N0
        else:
            raise AssertionError(key)
        assert got == want, key


def test_lookup_parametrised_and_unknown():
    assert lookup("PENCILS(2,3)").d == 5
    assert lookup("NODAL(6)").d == 6
    with pytest.raises(KeyError):
        lookup("NOPE")


def test_report_counts_and_records():
    rep = VerifyReport("demo", "X", [Check("a", True), Check("b", NOT_MET), Check("c", False)])
    assert not rep.ok
    assert rep.counts()[PASS] == 1 and rep.counts()[FAIL] == 1 and rep.counts()[NOT_MET] == 1
    rows = rep.records()
    assert rows[-1]["check"] == "summary" and rows[-1]["status"] == FAIL
    text = render_records(rows)
    assert text.count("\n") == 3 and f"status={NOT_MET}" in text


def test_not_met_is_not_a_failure():
    rep = verify(lookup("F3"), "thm3")[0]
    assert rep.ok and rep.counts()[NOT_MET] == 1


def test_pencil_reported_not_met():
    A = pencils(0, 4)
    for suite in ("thm1", "thm2", "prop4"):
        rep = verify(A, suite)[0]
        assert rep.ok and rep.checks[0].status == NOT_MET


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify(lookup("F3"), "nope")


def test_partner_suite_needs_external_data():
    rep = verify(lookup("F3"), "thmD2")[0]
    assert rep.checks[0].status == NOT_MET and ZIEGLER_NOTE in rep.checks[0].detail
    rep = verify(lookup("F3"), "thmD2", Options(partner=lookup("F3")))[0]
    assert not rep.ok


@pytest.mark.slow
@pytest.mark.parametrize("name", ["F3", "THREE_TRIPLES", "PLUS_ONE"])
def test_full_suite_passes(name):
    reports = verify(lookup(name), "full")
    assert {r.suite for r in reports} == set(suite_ids()) - {"full", "thmD2"}
    assert all(r.ok for r in reports), [c for r in reports for c in r.checks if c.failed]


def test_analysis_renderings_agree():
    facts = analyze(lookup("SSV"))
    text = render_facts_text(facts)
    recs = render_facts_records(facts)
    parsed = []
    for line in recs.splitlines():
        fields = dict(kv.split("=", 1) for kv in line.split("\t"))
        parsed.append((fields["section"], fields["key"], fields["value"]))
    assert parsed == facts
    section = None
    from_text = []
    for line in text.splitlines():
        if line.startswith("["):
            section = line[1:-1]
        else:
            k, _, v = line[2:].partition(": ")
            from_text.append((section, k, v))
    assert from_text == facts


def test_analysis_contents():
    facts = {(s, k): v for s, k, v in analyze(lookup("F3"))}
    assert facts[("lattice", "tau")] == "19"
    assert facts[("syzygy", "exponents")] == "2,3"
    assert facts[("syzygy", "dim.4")] == "9"
    assert facts[("cover", "N")] == "3"
    pen = {(s, k): v for s, k, v in analyze(pencils(0, 3))}
    assert pen[("syzygy", "pencil")] == "True"


RANDOM_SUITES = ["thmD", "cor20", "castelnuovo", "free-tau", "thm1", "thm2", "thmG-span", "thm1G-exact",
                 "propG1", "propG2", "eqG7", "eqG8", "propthm10", "conj10"]


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_random_suites(seed):
    A = random_arrangement(seed, 3 + seed % 6)
    for suite in RANDOM_SUITES:
        for rep in verify(A, suite):
            assert rep.ok, (suite, [c for c in rep.checks if c.failed])

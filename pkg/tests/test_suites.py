"""Verification suites on small corpora: results, determinism, parallelism."""

from permsn.corpus import CorpusSpec
from permsn.infer import infer
from permsn.sn import SnCache
from permsn.suites import (corrupt_derivation, run_suites, verify_lemmas,
                           verify_theorem1, verify_theoremD)
from permsn.syntax import parse
from permsn.typesys import check, derivation_nodes

SMALL = (CorpusSpec(6), CorpusSpec(5, 2, closed_only=False))


def report_key(report):
    return (report.name, report.terms, report.passed, report.failed,
            report.unknown, tuple(report.counterexamples),
            tuple(sorted((k, tuple(v)) for k, v in report.breakdown.items())))


def test_theorem1_passes_on_a_small_corpus():
    report = verify_theorem1(SMALL)
    assert report.ok
    assert report.terms > 0
    assert report.unknown == 0
    assert report.breakdown["sn_preserved"][1] == 0
    assert report.breakdown["eta_monotone"][1] == 0
    assert "PASS theorem1" in report.summary_line()


def test_theoremD_passes_on_a_small_corpus():
    report = verify_theoremD(SMALL)
    assert report.ok
    assert report.breakdown["infer"][1] == 0
    assert report.breakdown["check"][1] == 0
    assert report.breakdown["measure"][1] == 0
    assert report.breakdown["corruption_rejected"][1] == 0


def test_lemmas_pass_on_a_small_corpus():
    report = verify_lemmas(SMALL)
    assert report.ok
    for key in ("reduct_typable", "subst_commutes", "head_criterion",
                "eta_expansion"):
        assert report.breakdown[key][1] == 0
        assert report.breakdown[key][0] > 0


def test_suites_are_deterministic():
    assert report_key(verify_theorem1(SMALL)) == \
        report_key(verify_theorem1(SMALL))


def test_cold_and_warm_cache_agree():
    cache = SnCache()
    warm_up = verify_theorem1(SMALL, cache=cache)
    warmed = verify_theorem1(SMALL, cache=cache)
    cold = verify_theorem1(SMALL)
    assert report_key(warm_up) == report_key(warmed) == report_key(cold)


def test_every_corruption_is_rejected():
    d = infer(parse(r"(\y. \x. y x) a b")).derivation
    assert check(d) is None
    n = len(derivation_nodes(d))
    for counter in range(4 * n):
        assert check(corrupt_derivation(d, counter)) is not None


def test_parallel_run_matches_the_serial_counts():
    serial = verify_theoremD(SMALL, jobs=1)
    parallel = verify_theoremD(SMALL, jobs=2)
    assert (serial.terms, serial.passed, serial.failed, serial.unknown) == \
        (parallel.terms, parallel.passed, parallel.failed, parallel.unknown)
    assert serial.breakdown == parallel.breakdown


def test_run_suites_shares_one_cache_and_orders_reports():
    reports = run_suites(["theorem1", "theoremD"], SMALL)
    assert [r.name for r in reports] == ["theorem1", "theoremD"]
    assert all(r.ok for r in reports)

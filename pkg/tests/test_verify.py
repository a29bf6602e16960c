from dataclasses import replace
from fractions import Fraction

import mulseries as ms
from mulseries.verify import thread_count


def test_all_checks_pass_on_fixtures(cusp, chain7, two_stars):
    for model in (cusp, chain7, two_stars):
        results = ms.run_model_checks(model, Fraction(3))
        assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_check_names_are_stable(cusp):
    names = [r.name for r in ms.run_model_checks(cusp, Fraction(2))]
    assert names == [
        "contact-roundtrip",
        "intersection-identities",
        "terminal-dichotomy",
        "star-corner-identity",
        "free-truncation-scaling",
        "threshold",
        "contribution-characterization",
        "predecessor-identity",
        "dimension-laws",
        "series-identity",
        "jump-detection",
    ]


def test_tampered_divisor_fails_named_checks(cusp):
    tampered = replace(cusp, valuation_divisor=(2, 3, 7))
    report = ms.run_verification([tampered], Fraction(2))
    assert not report.passed
    failed = {c.name for c in report.failures}
    assert "intersection-identities" in failed
    assert "series-identity" in failed


def test_tampered_canonical_fails(cusp):
    tampered = replace(cusp, canonical=(1, 2, 5))
    report = ms.run_verification([tampered], Fraction(2))
    failed = {c.name for c in report.failures}
    assert "intersection-identities" in failed


def test_threaded_run_matches_serial(small_corpus):
    sample = small_corpus[:8]
    serial = ms.run_verification(sample, Fraction(2), threads=1)
    threaded = ms.run_verification(sample, Fraction(2), threads=4)
    assert serial == threaded
    assert serial.passed


def test_thread_count_resolution(monkeypatch):
    monkeypatch.delenv("MULSERIES_THREADS", raising=False)
    assert thread_count() == 1
    assert thread_count(6) == 6
    monkeypatch.setenv("MULSERIES_THREADS", "3")
    assert thread_count() == 3
    assert thread_count(2) == 2
    monkeypatch.setenv("MULSERIES_THREADS", "junk")
    assert thread_count() == 1


def test_report_dict_shape(point):
    report = ms.run_verification([point], Fraction(3))
    payload = report.to_dict()
    assert payload["passed"] is True
    assert payload["failed_checks"] == 0
    assert payload["total_checks"] == len(payload["checks"])
    assert {c["name"] for c in payload["checks"]} >= {"threshold", "series-identity"}

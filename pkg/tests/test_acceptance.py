"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines; they are
also written through the terminal even without ``-s``.

Criteria 1 and 2 fail as stated (type C lengths, type D orbit images); the
literal versions are strict expected failures and the corrected versions
must pass.  Criteria 3 to 9 run the CLI suites; criterion 10 reruns the
property tests of the module suites.
"""
import time

import pytest

import test_braid
import test_freealg
import test_iqg
from affqsp.cli import EXIT_OK, run


@pytest.fixture
def report_line(capsys):
    def emit(n, ok, note=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}{'  ' + note if note else ''}")
    return emit


def _run(*entries):
    t0 = time.perf_counter()
    code, rep = run({"checks": list(entries)})
    bad = [c["id"] for c in rep["checks"] if c["status"] != "pass"]
    return code == EXIT_OK and not bad, bad, time.perf_counter() - t0


def _entry(suite, mode="prob", **params):
    return {"suite": suite, "params": params, "mode": mode, "seed": 0}


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


# 1. reduced words for fundamental weights ---------------------------------------------


def test_criterion_1(report_line):
    literal, bad, t1 = _run(_entry("table1"))
    corrected, bad_c, t2 = _run(_entry("table1", length_formula="root_sum"))
    report_line(1, literal, f"as stated: {len(bad)} failing ({', '.join(bad[:3])}...); "
                            f"corrected lengths: {'PASS' if corrected else 'FAIL'}; {t1 + t2:.1f}s")
    assert corrected, bad_c
    assert all(b.startswith("table1/C") for b in bad)


@pytest.mark.xfail(strict=True, reason="the stated type C length formula is wrong; the true length is i(2n-i+1)")
def test_criterion_1_as_stated():
    ok, bad, _ = _run(_entry("table1"))
    assert ok, bad


# 2. images of simple roots under zeta words -------------------------------------------


def test_criterion_2(report_line):
    literal, bad, t1 = _run(_entry("orbits"))
    corrected, bad_c, t2 = _run(_entry("orbits", corrected=True))
    report_line(2, literal, f"as stated: {len(bad)} failing ({', '.join(bad[:3])}...); "
                            f"corrected images: {'PASS' if corrected else 'FAIL'}; {t1 + t2:.1f}s")
    assert corrected, bad_c
    assert all(b.startswith("orbits/D") for b in bad)


@pytest.mark.xfail(strict=True, reason="some displayed type D orbit images are wrong")
def test_criterion_2_as_stated():
    ok, bad, _ = _run(_entry("orbits"))
    assert ok, bad


# 3 to 9. CLI suites ------------------------------------------------------------------------

SUITE_CRITERIA = {
    3: [_entry("fe_vanishing", mode="exact")],
    4: [_entry("rank_two", mode="exact")],
    5: [_entry("closed_forms")],
    6: [_entry("igood")],
    7: [_entry("weak_compat")],
    9: [_entry("qchar", max_n=12)],
}


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(SUITE_CRITERIA))
def test_suite_criteria(n, report_line):
    ok, bad, t = _run(*SUITE_CRITERIA[n])
    report_line(n, ok, f"{t:.1f}s" + (f"; failing: {bad}" if bad else ""))
    assert ok, bad


@pytest.mark.slow
def test_criterion_8(report_line):
    ok_qi, bad_qi, t1 = _run(_entry("qi"))
    t0 = time.perf_counter()
    _, rep = run({"checks": [_entry("section8")]})
    t2 = time.perf_counter() - t0
    status = {c["id"]: c["status"] for c in rep["checks"]}
    wanted = ["section8/D4/vanish_one", "section8/D4/vanish_two", "section8/D5/vanish_one",
              "section8/D5/vanish_two", "section8/D4/commutator_2"]
    bad_s8 = [w for w in wanted if status[w] != "pass"]
    ok = ok_qi and not bad_s8
    report_line(8, ok, f"{t1 + t2:.1f}s" + (f"; failing: {bad_qi + bad_s8}" if not ok else ""))
    assert ok, bad_qi + bad_s8


# 10. property suites -------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_10(report_line):
    props = {
        "nested brackets on chains": test_iqg.test_nested_brackets_agree_on_chains,
        "argument exchange": test_iqg.test_commuting_arguments_can_be_exchanged,
        "Lusztig braid relations": test_braid.test_braid_relations_lusztig,
        "QSP braid relations": test_braid.test_braid_relations_qsp,
        "K-normalisation confluence": test_freealg.test_k_normalisation_is_confluent,
        "subterms sum to eta": test_iqg.test_subterms_sum_to_eta,
    }
    failed, total = [], 0.0
    for name, fn in props.items():
        try:
            total += _timed(fn)
        except AssertionError:
            failed.append(name)
    report_line(10, not failed, f"{len(props)} property suites; {total:.1f}s" + (f"; failing: {failed}" if failed else ""))
    assert not failed, failed

from __future__ import annotations

import json

import pytest

from kfgmonoid.errors import UnknownSuite
from kfgmonoid.verify import DEFAULT_SUITES, SUITES, TABLE5, verify_paper


def test_suite_names():
    assert "extended" in SUITES and "extended" not in DEFAULT_SUITES
    assert {"table5", "global-collapses", "witness11", "meet", "topsum"} <= set(DEFAULT_SUITES)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        verify_paper("table99")


def test_table5_totals():
    assert [sum(TABLE5[n]) for n in range(1, 9)] == [1, 3, 9, 33, 139, 718, 4535, 35979]


def test_report_is_deterministic():
    first = verify_paper("table5", max_n=5)
    second = verify_paper("table5", max_n=5)
    assert first.to_json() == second.to_json()
    assert first.ok
    data = json.loads(first.to_json())
    assert data["ok"] is True and len(data["results"]) == 5
    assert first.to_text().endswith("5/5 criteria passed\n")
    assert first.to_csv().splitlines()[0] == "suite,criterion,status,observed,expected"


@pytest.mark.slow
def test_jobs_do_not_change_the_report():
    serial = verify_paper(None, max_n=3, jobs=1)
    parallel = verify_paper(None, max_n=3, jobs=2)
    assert serial.to_json() == parallel.to_json()


def test_failures_are_reported():
    report = verify_paper("topsum")
    failed = {r.name for r in report.results if not r.passed}
    assert failed == {"GE (k, k_f) for 1..3 copies", "GE (K_f=34) is completely full after 3 copies"}
    assert not report.ok

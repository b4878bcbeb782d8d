from __future__ import annotations

import pytest

from kfgmonoid.census import (
    CENSUS_KINDS,
    PsiPredicate,
    census,
    global_structures,
    max_psi_per_space,
    minimal_psi_sizes,
    minimal_search,
    psi_collapse_consistency,
    structural_checks,
)
from kfgmonoid.enumeration import canonical_form
from kfgmonoid.errors import NotFoundWithinBound
from kfgmonoid.monoid import SpaceType
from kfgmonoid.subsets import classify_psi
from kfgmonoid.topology import from_base


def test_kinds():
    assert set(CENSUS_KINDS) == {
        "kf-collapses",
        "kfg0-collapses",
        "kf-orderings",
        "kfg0-orderings",
        "k-orderings",
        "kf0-orderings",
        "relation-classes",
    }


def test_kfg0_census():
    assert census("kfg0-collapses", 5).extra["count"] == 47
    assert census("kfg0-orderings", 6).extra["count"] == 131


def test_census_record_shape():
    rec = census("kf-collapses", 4)
    assert rec.n == 4 and rec.total == 1 + 3 + 9 + 33
    assert sum(rec.counts.values()) == rec.total
    assert set(rec.extra["provenance"]) == {"1", "2", "3", "4"}


def test_kf_collapses_track_minimal_sizes():
    cumulative = census("kf-collapses", 6).extra["cumulative"]
    values = [cumulative[n] for n in range(1, 7)]
    assert values == sorted(values)
    sizes = minimal_psi_sizes(6)
    for n in range(1, 7):
        assert cumulative[n] == sum(1 for m in sizes.values() if m <= n)


def test_minimal_search_examples():
    kd = minimal_search(lambda s: s.space_type is SpaceType.KD)
    assert kd.n == 5
    assert kd.space.closures == canonical_form(from_base([[0], [1], [0, 1, 2], [3, 4]], 5)).closures
    resolvable = minimal_search(PsiPredicate({61}))
    assert resolvable.n == 2
    assert classify_psi(resolvable.space.topology, resolvable.subset) == 61
    assert minimal_search(PsiPredicate({42, 44})).n == 4


def test_minimal_search_bound():
    with pytest.raises(NotFoundWithinBound):
        minimal_search(PsiPredicate({1}), max_n=5)


def test_consistency_small():
    checked, bad = psi_collapse_consistency(5)
    assert checked == sum(c << n for n, c in {1: 1, 2: 3, 3: 9, 4: 33, 5: 139}.items())
    assert bad == 0


def test_global_structures():
    kf = global_structures(6, "KF")
    assert kf[5] == (7, 9) and kf[6] == (7, 9)
    kfg = global_structures(6, "KFG")
    assert kfg[6] == (10, 12)


def test_structural_checks_through_six():
    checks = {c.name: c for c in structural_checks(6)}
    for name in (
        "no space k_f-number 12",
        "psi 49-52 co-occur",
        "KD spaces are irresolvable",
        "GE iff psi 44 occurs",
        "every k_f(A) is even",
        "observed numbers lie in Table 10",
    ):
        assert checks[name].ok, checks[name].detail


@pytest.mark.slow
def test_seventy_collapses_through_eight():
    assert census("kf-collapses", 8).extra["count"] == 70


@pytest.mark.slow
def test_most_psi_numbers_in_one_space():
    assert {n: m for n, m in max_psi_per_space(8).items() if n >= 4} == {4: 12, 5: 17, 6: 25, 7: 32, 8: 38}

from __future__ import annotations

import itertools

import pytest

from kfgmonoid.enumeration import enumerate_classes
from kfgmonoid.errors import UniverseTooLarge
from kfgmonoid.monoid import space_collapse
from kfgmonoid.subsets import classify_psi, subset_collapse, witness_space
from kfgmonoid.sums import (
    SumSpec,
    collapse_intersection_sample,
    copies,
    increment_profile,
    meet_table,
    minimal_space,
    phi_meet,
    psi_implications,
    psi_meet,
    realize_meets,
    sum_space,
    topsum_report,
    verify_psi_implications,
    witness_topologies,
)
from kfgmonoid.topology import Topology


def test_sierpinski_squared(sierpinski):
    t = sum_space([sierpinski, sierpinski])
    assert t.n == 4 and len(t.opens()) == 9


def test_single_component_is_identity(ge_space):
    assert sum_space([ge_space]) == ge_space


def test_closure_is_componentwise(sierpinski, ge_space):
    spec = SumSpec([sierpinski, ge_space])
    t = sum_space(spec)
    for a1 in range(4):
        for a2 in range(16):
            code = spec.embed([a1, a2])
            assert t.closure_code(code) == spec.embed([sierpinski.closure_code(a1), ge_space.closure_code(a2)])


def test_opens_are_products(sierpinski, ge_space):
    spec = SumSpec([sierpinski, ge_space])
    expected = {spec.embed([u, v]) for u, v in itertools.product(sierpinski.opens(), ge_space.opens())}
    assert set(sum_space(spec).opens()) == expected


def test_universe_cap(ge_space):
    with pytest.raises(UniverseTooLarge):
        copies(ge_space, 5)
    with pytest.raises(UniverseTooLarge):
        topsum_report("KD", 4)


def test_collapse_of_sum_is_intersection():
    for m, k in ((5, 40), (23, 61), (44, 65)):
        t1, a1 = witness_space(m)
        t2, a2 = witness_space(k)
        spec = SumSpec([t1, t2])
        t = sum_space(spec)
        joined = subset_collapse(t, spec.embed([a1, a2]))
        assert joined == subset_collapse(t1, a1).meet(subset_collapse(t2, a2))


def test_meet_anchors():
    assert all(psi_meet(1, k) == 1 for k in range(1, 71))
    assert psi_meet(69, 70) == 68
    assert [phi_meet(30, k) for k in range(1, 31)] == list(range(1, 31))


def test_meet_tables():
    psi = meet_table("psi")
    phi = meet_table("phi")
    assert psi.size == 70 and phi.size == 30
    for table in (psi, phi):
        assert table.is_semilattice() and table.below_min()
    assert phi.height() == 6
    assert psi.height() == 9
    assert psi.to_csv().splitlines()[0].startswith("meet,1,2,3")


def test_meets_realized_by_sums():
    assert realize_meets("phi").ok
    sample = [(m, k) for m in range(1, 71, 7) for k in range(1, 71, 5)]
    assert realize_meets("psi", sample).ok


def test_random_collapse_intersections():
    report = collapse_intersection_sample(300, max_n=5, seed=3)
    assert report.checked == 300 and report.ok


def test_topsum_examples():
    assert [(r.k, r.kf) for r in (topsum_report("KD", c) for c in (1, 2, 3))] == [(10, 18), (12, 22), (14, 28)]
    assert topsum_report("KD", 3).completely_full
    two = topsum_report("discrete-single", 2)
    assert two.new_psi == {68} and (two.k, two.kf) == (2, 4)
    assert (topsum_report("GE", 1).k, topsum_report("GE", 1).kf) == (8, 10)
    assert (topsum_report("GE", 2).k, topsum_report("GE", 2).kf) == (10, 24)


def test_topsum_ge_needs_four_copies():
    three = topsum_report("GE", 3)
    assert (three.k, three.kf) == (12, 30)
    four = topsum_report("GE", 4)
    assert (four.k, four.kf) == (14, 34) and four.completely_full
    assert four.new_psi == {1}


def test_minimal_spaces_have_their_type():
    for kind, size in (("GE", 34), ("KD", 28), ("ED", 22), ("OU", 20), ("EO", 16), ("P", 10), ("D", 4)):
        assert len(space_collapse(minimal_space(kind), "KF")) == size


def test_implication_data():
    groups, edges = psi_implications()
    assert {m for g in groups for m in g} == set(range(1, 71))
    assert edges


def test_implications_small():
    report = verify_psi_implications(5)
    assert report.ok, (report.edge_failures[:3], report.recipe_failures[:3])


def test_every_space_contains_whole_set():
    for t in (Topology.discrete(2), Topology.indiscrete(3)):
        assert classify_psi(t, t.full) == 69


def test_witness_topologies():
    report = witness_topologies()
    assert report.partition
    assert all(not report.missing(name) for name in report.claimed)
    assert report.ok


def test_increment_bounds():
    # while X_n is not full, one more copy adds 2..4 to k and 2..20 to k_f
    for n in range(1, 5):
        for space in enumerate_classes(n):
            t = space.topology
            k_max, kf_max = len(space_collapse(t, "K")), len(space_collapse(t, "KF"))
            steps = increment_profile(t, 12)
            for (k0, f0), (k1, f1) in zip(steps, steps[1:]):
                if k0 < k_max:
                    assert 2 <= k1 - k0 <= 4
                else:
                    assert k1 == k0
                if f0 < kf_max:
                    assert 2 <= f1 - f0 <= 20

from __future__ import annotations

import pytest

from kfgmonoid import catalog
from kfgmonoid.enumeration import enumerate_classes
from kfgmonoid.errors import NotAPartialOrder, NotContained
from kfgmonoid.monoid import (
    Collapse,
    Ordering,
    SpaceType,
    canonical_collapses,
    classify_space,
    extender,
    generate_monoid,
    hasse_edges,
    poset_refines,
    projection_order,
    reference_order,
    space_collapse,
    space_ordering,
)
from kfgmonoid.operators import word_to_operator
from kfgmonoid.topology import Topology, from_base

import oracles


def oracle_space(t: Topology) -> oracles.Space:
    return oracles.Space({oracles.from_code(u) for u in t.opens()}, t.n)


def test_monoid_sizes_on_minimal_spaces(ge_space, kd_space):
    assert len(generate_monoid(ge_space, "ab")) == 14
    assert len(generate_monoid(Topology.discrete(1), "abf")) == 4
    assert len(generate_monoid(kd_space, "abf")) == 28
    assert len(generate_monoid(ge_space, "abf")) == 34
    assert len(generate_monoid(ge_space, "bifg")) == 20


def test_monoid_sizes_match_oracle(ge_space, kd_space, sierpinski):
    for t in (ge_space, kd_space, sierpinski):
        space = oracle_space(t)
        for gens in ("ab", "abf", "abfg"):
            assert len(generate_monoid(t, gens)) == oracles.monoid_size(space, gens)


def test_generated_monoid_is_the_catalog():
    for n in range(1, 5):
        for s in enumerate_classes(n, cache=False):
            t = s.topology
            for gens, cat in (("abf", catalog.KF), ("bifg", catalog.KFG0)):
                generated = set(generate_monoid(t, gens))
                assert generated == {word_to_operator(t, w) for w in cat}


def test_border_catalog_is_not_closed_under_right_complement(ge_space):
    # ga is not a catalog word, so {a, b, f, g} generates more than the 40 words
    generated = set(generate_monoid(ge_space, "abfg"))
    words = {word_to_operator(ge_space, w) for w in catalog.KFG}
    assert words < generated and len(generated) == 50
    assert word_to_operator(ge_space, "ga") in generated - words


def test_monoid_sizes_are_the_known_values():
    k_sizes, kf_sizes = set(), set()
    for n in range(1, 6):
        for s in enumerate_classes(n):
            k_sizes.add(len(generate_monoid(s.topology, "ab")))
            kf_sizes.add(len(generate_monoid(s.topology, "abf")))
    assert k_sizes <= {2, 6, 8, 10, 14}
    assert kf_sizes == {4, 10, 16, 20, 22, 28, 34}


def test_space_collapse_examples(ge_space, sierpinski):
    one = space_collapse(Topology.discrete(1), "KF")
    assert len(one) == 4
    assert {"b", "i", "id"} <= set(one.class_of("b"))
    assert "0" in one.class_of("f")
    assert len(space_collapse(ge_space, "KF")) == 34
    assert len(space_collapse(sierpinski, "KF")) == 16


def test_space_ordering_examples(ge_space, sierpinski):
    assert space_ordering(ge_space, "KF") == reference_order("KF")
    assert ("fb", "id") in space_ordering(sierpinski, "KF")
    point = space_ordering(Topology.discrete(1), "KF")
    assert ("id", "a") not in point and ("a", "id") not in point


def test_reference_order_is_universal():
    ref = reference_order("KF").pairs
    for n in range(1, 6):
        for s in enumerate_classes(n):
            assert ref <= space_ordering(s.topology, "KF").pairs


def test_classify_space_examples(ge_space, kd_space, sierpinski):
    assert classify_space(ge_space) is SpaceType.GE
    assert classify_space(kd_space) is SpaceType.KD
    assert classify_space(sierpinski) is SpaceType.EO
    assert classify_space(from_base([[0, 1]], 2)) is SpaceType.P
    assert classify_space(Topology.discrete(3)) is SpaceType.D


def test_kd_criterion():
    # among Kuratowski spaces: |KF| = 28 iff the interior of every boundary is clopen
    for n in range(1, 7):
        for s in enumerate_classes(n):
            t = s.topology
            if len(space_collapse(t, "K")) != 14:
                continue
            clopen = all(
                t.closure_code(t.interior_code(t.boundary_code(a))) == t.interior_code(t.boundary_code(a))
                for a in range(1 << n)
            )
            assert clopen == (len(space_collapse(t, "KF")) == 28)


def test_collapse_canonical_and_meet():
    c = Collapse.from_classes([["b", "a"], ["c"]])
    assert c.classes == (("a", "b"), ("c",))
    d = Collapse.from_classes([["a"], ["b", "c"]])
    assert c.meet(d) == Collapse.from_classes([["a"], ["b"], ["c"]])
    assert c.meet(d).refines(c)
    assert Collapse.from_json(c.to_json()) == c


def test_extender_small_cases():
    antichain = Ordering.from_pairs("pq", [])
    assert extender(antichain) == {("p", "q"), ("q", "p")}
    chain = Ordering.from_pairs("pqr", [("p", "q"), ("q", "r")])
    assert extender(chain) == set()
    with pytest.raises(NotAPartialOrder):
        extender(Ordering(frozenset("pq"), frozenset({("p", "p"), ("q", "q"), ("p", "q"), ("q", "p")})))


def test_extender_matches_brute_force():
    ground = "pqrs"
    p = Ordering.from_pairs(ground, [("p", "q"), ("r", "s")])
    brute = set()
    for x in ground:
        for y in ground:
            if (x, y) in p:
                continue
            grown = Ordering(p.ground, p.pairs | {(x, y)})
            closed = Ordering.from_pairs(ground, grown.pairs)
            if closed.pairs == grown.pairs and grown.is_partial_order():
                brute.add((x, y))
    assert extender(p) == brute


def test_extender_of_kf_order():
    assert ("ab", "b") in extender(reference_order("KF"))


def test_poset_refines():
    chain = Ordering.from_pairs("pq", [("p", "q")])
    assert poset_refines(chain, chain).equal
    antichain = Ordering.from_pairs("pq", [])
    result = poset_refines(antichain, chain)
    assert not result.equal and result.witness == ("p", "q")
    with pytest.raises(NotContained):
        poset_refines(chain, antichain)


def test_poset_refines_finds_witness_for_non_ge_space(sierpinski):
    result = poset_refines(reference_order("KF"), space_ordering(sierpinski, "KF"))
    assert not result.equal
    assert result.witness in space_ordering(sierpinski, "KF")


def test_projection_order():
    assert projection_order("D", "P")
    assert projection_order("KD", "GE")
    assert not projection_order("GE", "KD")
    for t in SpaceType:
        assert projection_order(t, t)


def test_monoid_type_collapses():
    kf = canonical_collapses("KF")
    assert {k: len(c) for k, c in kf.items()} == {"GE": 34, "KD": 28, "ED": 22, "OU": 20, "EO": 16, "P": 10, "D": 4}
    assert len(canonical_collapses("KFG")) == 10


def test_hasse_edges_kf_view():
    assert hasse_edges("KF") == {
        ("D", "EO"),
        ("D", "P"),
        ("ED", "KD"),
        ("EO", "ED"),
        ("EO", "OU"),
        ("KD", "GE"),
        ("OU", "KD"),
        ("P", "ED"),
    }

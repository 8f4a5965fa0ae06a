from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlink.algebra import cyclic_group, direct_product
from invlink.examples import codiscrete, discrete, from_group, minimal_non_groupoid
from invlink.finset import FinMap, FinSet, ShapeError, compose, identity
from invlink.inv2link import (
    Inv2Link,
    Inv2LinkMorphism,
    NoInducedMap,
    NotALinkMorphism,
    compose_morphisms,
    dihedral_order,
    identity_morphism,
    induce_fbar,
    link_morphism,
    links_isomorphic,
    orbits,
    validate_link,
)
from suite_instances import suite


def link(c1: int, m, theta, phi) -> Inv2Link:
    C2 = FinSet(len(m))
    return Inv2Link(FinMap(C2, FinSet(c1), tuple(m)), FinMap(C2, C2, tuple(theta)),
                    FinMap(C2, C2, tuple(phi)))


def permuted(L: Inv2Link, p1, p2) -> Inv2Link:
    """The same link with C1 relabelled by p1 and C2 by p2."""
    inv2 = [0] * len(p2)
    for a, b in enumerate(p2):
        inv2[b] = a
    m = [p1[L.m(inv2[b])] for b in range(len(p2))]
    theta = [p2[L.theta(inv2[b])] for b in range(len(p2))]
    phi = [p2[L.phi(inv2[b])] for b in range(len(p2))]
    return link(L.c1.size, m, theta, phi)


def test_minimal_non_groupoid_is_a_link():
    L = minimal_non_groupoid()
    report = validate_link(L)
    assert report.ok
    assert report.render() == "involutions PASS\ninterlink PASS\njoint_mono PASS\n"
    assert L.pi1.table == (0, 0, 1)
    assert L.pi2.table == (1, 0, 0)
    assert [L.triple(a) for a in range(3)] == [(0, 1, 0), (1, 0, 0), (0, 0, 1)]


def test_involution_failure_names_an_element():
    L = link(3, [0, 1, 2], [1, 2, 0], [0, 1, 2])
    v = validate_link(L)["involutions"]
    assert not v.ok and v.witness == "0"
    assert "theta^2" in v.detail


def test_interlink_failure():
    # commuting involutions: theta phi theta = phi, phi theta phi = theta
    L = link(4, [0, 1, 2, 3], [1, 0, 2, 3], [0, 1, 3, 2])
    report = validate_link(L)
    assert report["involutions"].ok
    assert not report["interlink"].ok
    assert report["interlink"].witness == "0"


def test_joint_mono_failure():
    L = link(1, [0, 0], [0, 1], [0, 1])
    v = validate_link(L)["joint_mono"]
    assert not v.ok and v.witness == "0"
    assert "0 and 1" in v.detail


def test_identity_theta_note():
    report = validate_link(discrete(2))
    assert report.ok
    assert report.notes == ("theta is the identity, hence so is phi",)
    assert report.lines()[-1] == "# theta is the identity, hence so is phi"


def test_shape_is_checked():
    with pytest.raises(ShapeError):
        Inv2Link(FinMap(FinSet(2), FinSet(1), (0, 0)), identity(FinSet(3)), identity(FinSet(2)))


def test_dihedral_orders():
    assert dihedral_order(discrete(3)) == 1
    assert dihedral_order(minimal_non_groupoid()) == 6
    assert dihedral_order(from_group(cyclic_group(2))) == 6
    # theta = phi != 1 is a link whose group has order 2
    assert dihedral_order(link(1, [0, 0], [1, 0], [1, 0])) == 2
    assert validate_link(link(2, [0, 1], [1, 0], [1, 0])).ok


def test_orbits():
    assert orbits(minimal_non_groupoid()) == [[0, 1, 2]]
    assert orbits(discrete(2)) == [[0], [1]]


def test_induce_fbar_identity_and_failure():
    L = minimal_non_groupoid()
    assert induce_fbar(L, L, identity(L.c1)) == identity(L.c2)
    with pytest.raises(NoInducedMap) as info:
        induce_fbar(L, L, FinMap(L.c1, L.c1, (1, 0)))
    assert info.value.witness == 0
    assert "(1, 0, 1)" in str(info.value)


def test_induce_fbar_into_a_point():
    L = from_group(cyclic_group(3))
    point = discrete(1)
    fbar = induce_fbar(L, point, FinMap(L.c1, point.c1, (0, 0, 0)))
    assert fbar.table == (0,) * 9


def test_induce_fbar_needs_joint_mono_target():
    bad = link(1, [0, 0], [0, 1], [0, 1])
    with pytest.raises(ValueError, match="not jointly monic"):
        induce_fbar(discrete(1), bad, FinMap(FinSet(1), FinSet(1), (0,)))


def test_morphism_equations_are_checked():
    L = minimal_non_groupoid()
    with pytest.raises(NotALinkMorphism):
        Inv2LinkMorphism(L, L, identity(L.c1), FinMap(L.c2, L.c2, (1, 0, 2)))


def test_morphisms_compose():
    G = from_group(cyclic_group(2))
    point = discrete(1)
    to_point = link_morphism(G, point, FinMap(G.c1, point.c1, (0, 0)))
    back = link_morphism(point, G, FinMap(point.c1, G.c1, (0,)))
    loop = compose_morphisms(back, to_point)
    assert loop.f.table == (0, 0)
    assert loop.fbar.table == (0, 0, 0, 0)
    assert compose_morphisms(identity_morphism(G), loop) == loop
    with pytest.raises(ShapeError):
        compose_morphisms(to_point, to_point)


def test_non_isomorphic_groups_give_non_isomorphic_links():
    Z4 = from_group(cyclic_group(4))
    V4 = from_group(direct_product(cyclic_group(2), cyclic_group(2)))
    assert links_isomorphic(Z4, V4) is None
    assert links_isomorphic(Z4, Z4) is not None
    assert links_isomorphic(discrete(2), codiscrete(1)) is None


LINKS = [x.link for x in suite() if x.link.c2.size <= 16]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LINKS), st.randoms(use_true_random=False))
def test_relabelled_links_are_isomorphic(L, rnd):
    p1 = list(range(L.c1.size))
    p2 = list(range(L.c2.size))
    rnd.shuffle(p1)
    rnd.shuffle(p2)
    K = permuted(L, p1, p2)
    assert validate_link(K).ok
    found = links_isomorphic(L, K)
    assert found is not None
    forward, backward = found
    assert compose(backward.f, forward.f) == identity(L.c1)
    assert compose(backward.fbar, forward.fbar) == identity(L.c2)

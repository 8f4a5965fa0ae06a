from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from invlink.algebra import (
    AlgebraError,
    FinGroup,
    FinInverseSemigroup,
    FinMonoid,
    GroupAction,
    OpenCover,
    brandt_semigroup,
    chain_semilattice,
    cyclic_group,
    direct_product,
    free_semilattice,
    monoid_hom_report,
    monoid_homs,
    small_groups,
    small_monoids,
    symmetric_group,
    symmetric_inverse_monoid,
    with_zero,
)
from invlink.bridge import classify, to_groupoid
from invlink.examples import (
    InvolutiveMagma,
    MagmaConditionError,
    MagmaHypothesisError,
    RelationAction,
    cech,
    codiscrete,
    discrete,
    equivalence_report,
    from_equivalence_relation,
    from_group,
    from_group_action,
    from_group_monoid_hom,
    from_involutive_magma,
    from_inverse_semigroup,
    from_relation_action,
    partition_relation,
)
from invlink.finset import FinMap, FinSet
from invlink.inv2link import Inv2Link, links_isomorphic, validate_link


def test_family_sizes():
    L = codiscrete(2)
    assert (L.c1.size, L.c2.size) == (4, 8)
    L = from_equivalence_relation(3, partition_relation([0, 0, 1]))
    assert (L.c1.size, L.c2.size) == (5, 9)
    # sum over pairs and triples of parts of the intersection sizes
    L = cech(OpenCover(FinSet(3), ({0, 1}, {1, 2})))
    assert (L.c1.size, L.c2.size) == (6, 10)
    L = from_group_action(GroupAction(cyclic_group(2), FinSet(2), ((0, 1), (1, 0))))
    assert (L.c1.size, L.c2.size) == (4, 8)
    assert discrete(0).c2.size == 0


def test_group_link_on_labels():
    L = from_group(cyclic_group(2))
    assert L.c2.labels == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")
    # theta (x, y) = (x^-1, xy) fixes the first two pairs and swaps the last two
    assert L.theta.table == (0, 1, 3, 2)
    assert L.m.table == (0, 1, 1, 0)


def test_full_and_diagonal_relations():
    full = set(itertools.product(range(3), repeat=2))
    assert links_isomorphic(from_equivalence_relation(3, full), codiscrete(3)) is not None
    diagonal = {(x, x) for x in range(3)}
    assert links_isomorphic(from_equivalence_relation(3, diagonal), discrete(3)) is not None


def test_equivalence_report_witnesses():
    assert equivalence_report(2, {(0, 0)})["reflexive"].witness == "1"
    assert equivalence_report(2, {(0, 0), (1, 1), (0, 1)})["symmetric"].witness == "(0,1)"
    path = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)}
    assert equivalence_report(3, path)["transitive"].witness == "(0,1,2)"
    with pytest.raises(AlgebraError, match="transitive"):
        from_equivalence_relation(3, path)
    with pytest.raises(ValueError, match="outside"):
        from_equivalence_relation(2, {(0, 5)})


def test_cover_parts_must_lie_in_the_base():
    cover = OpenCover(FinSet(2), ({0, 3},))
    assert cover.report()["parts_in_base"].witness == "part0:3"
    with pytest.raises(AlgebraError):
        cech(cover)


def test_cover_need_not_cover():
    L = cech(OpenCover(FinSet(3), ({0},)))
    assert (L.c1.size, L.c2.size) == (1, 1)
    assert classify(L).ok


def test_magma_of_xor_is_a_group_link():
    xor = [[x ^ y for y in range(2)] for x in range(2)]
    L = from_involutive_magma(2, xor, [0, 1])
    assert L == from_group(cyclic_group(2))
    assert InvolutiveMagma(FinSet(2), xor, (0, 1)).link() == L


def test_magma_failures():
    zero = [[0, 0], [0, 0]]
    with pytest.raises(MagmaConditionError) as info:
        from_involutive_magma(2, zero, [0, 1])
    assert info.value.witness == (0, 1)
    with pytest.raises(MagmaHypothesisError, match="involution"):
        from_involutive_magma(3, [[0] * 3] * 3, [1, 2, 0])
    # x y = x is not reversed by the identity
    with pytest.raises(MagmaHypothesisError, match="reverses_op"):
        from_involutive_magma(2, [[0, 0], [1, 1]], [0, 1])
    with pytest.raises(ValueError):
        InvolutiveMagma(FinSet(2), [[0, 2], [0, 0]], (0, 1))


@pytest.mark.parametrize("name,G", small_groups(6))
def test_group_link_is_the_magma_link(name, G):
    L = from_group(G)
    assert L == from_involutive_magma(G.order, G.op, G.inv)
    assert validate_link(L).ok


def magma_link(n, op, inv):
    """Link on X x X built without any hypothesis checks."""
    C1, C2 = FinSet(n), FinSet(n * n)
    theta = [inv[x] * n + op[x][y] for x in range(n) for y in range(n)]
    phi = [op[x][y] * n + inv[y] for x in range(n) for y in range(n)]
    m = [op[x][y] for x in range(n) for y in range(n)]
    return Inv2Link(FinMap(C2, C1, tuple(m)), FinMap(C2, C2, tuple(theta)), FinMap(C2, C2, tuple(phi)))


@st.composite
def commutative_magmas(draw):
    n = draw(st.integers(1, 3))
    op = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            op[x][y] = op[y][x] = draw(st.integers(0, n - 1))
    return n, op


@given(commutative_magmas())
def test_cancellation_laws_decide_whether_the_magma_gives_a_link(magma):
    # with the identity as inversion, commutativity is the reversal hypothesis
    n, op = magma
    ident = list(range(n))
    report = InvolutiveMagma(FinSet(n), op, ident).report()
    assert report["involution"].ok and report["reverses_op"].ok
    L = magma_link(n, op, ident)
    theta_ok = all(L.theta(L.theta(a)) == a for a in range(n * n))
    if not theta_ok:
        assert not report.ok
        return
    assert validate_link(L).ok == report.ok
    if report.ok:
        assert from_involutive_magma(n, op, ident) == L


def test_group_monoid_hom_into_a_semilattice():
    M = FinMonoid(FinSet(2), [[0, 1], [1, 1]], 0)
    G = cyclic_group(2)
    assert monoid_homs(G, M) == [(0, 0)]
    L = from_group_monoid_hom(G, M, (0, 0))
    assert (L.c1.size, L.c2.size) == (4, 8)
    assert classify(L).ok
    assert to_groupoid(L).c0.size == 2


def test_monoid_hom_failures():
    M = FinMonoid(FinSet(2), [[0, 1], [1, 1]], 0)
    G = cyclic_group(2)
    report = monoid_hom_report(G, M, (1, 1))
    assert report["hom_unit"].witness == "0"
    assert report["hom_mul"].ok
    assert monoid_hom_report(G, M, (0, 1))["hom_mul"].witness == "(1,1)"
    with pytest.raises(AlgebraError):
        from_group_monoid_hom(G, M, (0, 1))
    with pytest.raises(ValueError):
        from_group_monoid_hom(G, M, (0, 2))


def test_inverse_semigroup_links():
    L = from_inverse_semigroup(chain_semilattice(2))
    # composable exactly when x'x = yy', i.e. x = y for idempotents
    assert L.c2.size == 2
    assert classify(L).ok
    assert to_groupoid(L).c0.size == 2
    assert links_isomorphic(L, discrete(2)) is not None


def test_relation_action_validator():
    Z2 = cyclic_group(2).as_inverse_semigroup()
    bad_units = RelationAction(Z2, FinSet(2), FinSet(2), (0, 1), ((1, 0), (1, 0)),
                               frozenset({(0, 0)}))
    assert bad_units.report()["phi_units"].witness == "(0,0)"
    one = FinSet(1)
    missing = RelationAction(Z2, one, one, (0, 0), ((0,),), frozenset({(1, 0)}))
    assert missing.report()["R_closure_i"].witness == "(1,0)"
    Z3 = cyclic_group(3).as_inverse_semigroup()
    partial = RelationAction(Z3, one, one, (0, 0, 0), ((0,),), frozenset({(0, 0), (1, 0)}))
    report = partial.report()
    assert report["R_closure_i"].ok
    assert report["R_closure_ii"].witness == "(1,1,0)"
    with pytest.raises(AlgebraError, match="R_closure_ii"):
        from_relation_action(Z3, one, one, (0, 0, 0), ((0,),), {(0, 0), (1, 0)})
    with pytest.raises(ValueError):
        RelationAction(Z2, one, one, (0, 3), ((0,),), frozenset())


def test_group_checks():
    bad = FinGroup(FinSet(2), [[0, 1], [1, 1]], 0, (0, 1))
    assert bad.report()["inverse"].witness == "1"
    with pytest.raises(AlgebraError, match="inverse"):
        from_group(bad)
    with pytest.raises(ValueError, match="unit"):
        FinGroup.from_table([[1, 0], [0, 0]])
    S3 = symmetric_group(3)
    assert S3.order == 6 and S3.report().ok
    assert any(S3.mul(a, b) != S3.mul(b, a) for a in range(6) for b in range(6))
    V4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert all(V4.mul(a, a) == V4.unit for a in range(4))


def test_group_action_checks():
    Z2 = cyclic_group(2)
    assert GroupAction(Z2, FinSet(2), ((1, 0), (1, 0))).report()["action_unit"].witness == "0"
    Z3 = cyclic_group(3)
    swap = GroupAction(Z3, FinSet(2), ((0, 1), (1, 0), (1, 0)))
    assert swap.report()["action_compat"].witness == "(1,1,0)"


def test_small_monoid_count():
    # independent count: tables with unit 0 that are associative
    count = 0
    for values in itertools.product(range(3), repeat=4):
        op = [[0, 1, 2], [1, values[0], values[1]], [2, values[2], values[3]]]
        if all(op[op[x][y]][z] == op[x][op[y][z]] for x, y, z in itertools.product(range(3), repeat=3)):
            count += 1
    assert len(small_monoids(3)) == count
    assert len(small_monoids(2)) == 2
    assert small_monoids(0) == []


def test_inverse_semigroup_sizes():
    assert symmetric_inverse_monoid(2).order == 7
    assert free_semilattice(2).order == 3
    assert brandt_semigroup(2).order == 5
    assert with_zero(cyclic_group(2)).order == 3
    for S in (symmetric_inverse_monoid(2), free_semilattice(3), brandt_semigroup(2),
              with_zero(cyclic_group(3)), chain_semilattice(3)):
        assert S.report().ok
    twisted = FinInverseSemigroup(FinSet(2), [[0, 0], [1, 1]], (0, 1))
    assert not twisted.report()["idempotents_commute"].ok

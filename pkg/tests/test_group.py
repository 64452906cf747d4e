import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from permbound import (PermGroup, Permutation, ResourceLimitError, alternating_group, cyclic_group,
                       group_from_generators, symmetric_group)
from permbound.corpus import GroupSpec, build


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


def johnson52():
    return build(GroupSpec("johnson", (5,)))


def test_sym4_from_generators():
    G = group_from_generators([P([[0, 1]], 4), P([[0, 1, 2, 3]], 4)], 4)
    assert G.order() == 24


def test_trivial_group():
    G = group_from_generators([], 5)
    assert G.order() == 1
    assert G.is_trivial()


def test_alt5_from_generators():
    gens = [P([[0, 1, 2]], 5), P([[0, 1, 2, 3, 4]], 5)]
    G = group_from_generators(gens, 5)
    assert G.order() == 60 == len(oracles.closure([g.images for g in gens], 5))


def test_contains():
    assert symmetric_group(4).contains(P([[0, 2]], 4))
    assert not alternating_group(5).contains(P([[0, 1]], 5))


def test_klein_order():
    assert group_from_generators([P([[0, 1], [2, 3]], 4), P([[0, 2], [1, 3]], 4)], 4).order() == 4


def test_contains_degree_mismatch():
    with pytest.raises(ValueError):
        symmetric_group(4).contains(Permutation.identity(5))


def test_point_stabilizers():
    S = symmetric_group(4).point_stabilizer(0)
    assert S.order() == 6 and S.orbits() == [[0], [1, 2, 3]]
    assert cyclic_group(4).point_stabilizer(0).is_trivial()
    assert johnson52().point_stabilizer(0).order() == 12


def test_point_stabilizer_out_of_range():
    with pytest.raises(ValueError):
        symmetric_group(4).point_stabilizer(4)


def test_pointwise_stabilizers():
    S = symmetric_group(4).pointwise_stabilizer([0, 1])
    assert S.order() == 2 and S.contains(P([[2, 3]], 4))
    G = johnson52()
    assert G.pointwise_stabilizer([]).order() == G.order()


def test_johnson_pointwise_stabilizer_of_disjoint_suborbit():
    G = johnson52()
    from permbound.orbitals import suborbits
    delta = next(s for s in suborbits(G, 0) if s.size == 3)
    S = G.pointwise_stabilizer([0, *delta.points])
    elements = oracles.closure([g.images for g in G.generators], G.degree)
    fixers = [g for g in elements if all(g[p] == p for p in [0, *delta.points])]
    assert S.order() == len(fixers) == 2


def test_normal_closure():
    S3 = symmetric_group(3)
    assert S3.normal_closure([P([[0, 1]], 3)]).order() == 6
    assert S3.normal_closure([P([[0, 1, 2]], 3)]).order() == 3
    assert S3.normal_closure([Permutation.identity(3)]).order() == 1


def test_normal_closure_rejects_nonmember():
    with pytest.raises(ValueError):
        alternating_group(4).normal_closure([P([[0, 1]], 4)])


def test_is_normal():
    S4 = symmetric_group(4)
    assert S4.is_normal(alternating_group(4))
    S3 = symmetric_group(3)
    assert not S3.is_normal(S3.subgroup([P([[0, 1]], 3)]))


def test_elements():
    C6 = cyclic_group(6)
    els = list(C6.elements())
    assert len(els) == len(set(els)) == 6
    assert els[0].is_identity()
    assert els == list(C6.elements())


def test_elements_limit():
    with pytest.raises(ResourceLimitError):
        list(symmetric_group(8).elements(limit=1000))


def test_large_orders_are_exact():
    assert symmetric_group(25).order() == math.factorial(25)
    assert alternating_group(12).order() == math.factorial(12) // 2


def test_derived_subgroup():
    assert symmetric_group(4).derived_subgroup().order() == 12
    assert alternating_group(4).derived_subgroup().order() == 4
    assert alternating_group(5).derived_subgroup().order() == 60
    assert cyclic_group(7).derived_subgroup().is_trivial()


def test_with_base_keeps_order():
    G = johnson52()
    H = G.with_base([5, 3])
    assert H.base[:2] == (5, 3) and H.order() == G.order()


random_groups = st.integers(2, 7).flatmap(lambda n: st.lists(
    st.permutations(range(n)).map(Permutation), min_size=1, max_size=3))


@settings(max_examples=60, deadline=None)
@given(random_groups)
def test_order_matches_closure(gens):
    n = gens[0].degree
    G = PermGroup(gens, n)
    elements = oracles.closure([g.images for g in gens], n)
    assert G.order() == len(elements)
    for x in range(n):
        assert G.order() == G.point_stabilizer(x).order() * len(G.orbit(x))
        assert G.point_stabilizer(x).order() == len(oracles.stabilizer(elements, x))
    assert all(G.contains(g * h) for g in gens for h in gens)
    assert PermGroup(G.strong_generators(), n).order() == G.order()
    assert {g.images for g in G.elements()} == elements


@settings(max_examples=40, deadline=None)
@given(random_groups, st.data())
def test_membership_matches_closure(gens, data):
    n = gens[0].degree
    G = PermGroup(gens, n)
    elements = oracles.closure([g.images for g in gens], n)
    p = data.draw(st.permutations(range(n)).map(Permutation))
    assert G.contains(p) == (p.images in elements)


def test_chain_is_deterministic():
    a = group_from_generators([P([[0, 1, 2, 3, 4, 5]], 6), P([[0, 1]], 6)], 6)
    b = group_from_generators([P([[0, 1, 2, 3, 4, 5]], 6), P([[0, 1]], 6)], 6)
    assert a.base == b.base
    assert a.strong_generators() == b.strong_generators()

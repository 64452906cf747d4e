import math
from collections import Counter

import pytest

import oracles
from permbound import (PermGroup, Permutation, ResourceLimitError, alternating_group, cyclic_group,
                       symmetric_group)
from permbound.corpus import GroupSpec, build, enumerate_corpus, subdirect_instances
from permbound.structure import (FactorSignature, check_socle_primitive, check_subdirect, comp_a,
                                 composition_series, exponent, minimal_normal_subgroups, pi_product,
                                 proper_normal_subgroup, socle)


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


def spec(family, *params):
    return build(GroupSpec(family, params))


def test_proper_normal_subgroup():
    N = proper_normal_subgroup(symmetric_group(4))
    assert N.order() == 4 and N.is_abelian()
    assert proper_normal_subgroup(alternating_group(5)) is None
    assert proper_normal_subgroup(cyclic_group(6)).order() in (2, 3)


def test_composition_series_examples():
    assert sorted(composition_series(symmetric_group(4)).factor_orders()) == [2, 2, 2, 3]
    A5 = composition_series(alternating_group(5))
    assert [(f.kind, f.order) for f in A5.factors] == [("nonabelian", 60)]
    assert sorted(composition_series(cyclic_group(6)).factor_orders()) == [2, 3]


def test_series_is_a_composition_series():
    for G in (symmetric_group(4), spec("wreath_imprimitive", GroupSpec("symmetric", (3,)),
                                      GroupSpec("cyclic", (2,))), spec("johnson", 5)):
        s = composition_series(G)
        assert s.chain[0].order() == G.order() and s.chain[-1].is_trivial()
        assert math.prod(s.factor_orders()) == G.order()
        for upper, lower, f in zip(s.chain, s.chain[1:], s.factors):
            assert upper.is_normal(lower)
            assert upper.order() // lower.order() == f.order


def test_comp_a_examples():
    assert comp_a(symmetric_group(4)) == {2, 3}
    assert comp_a(alternating_group(5)) == set()
    assert comp_a(cyclic_group(12)) == {2, 3}


def test_minimal_normal_and_socle():
    mins = minimal_normal_subgroups(symmetric_group(4))
    assert [N.order() for N in mins] == [4]
    assert socle(symmetric_group(4)).order() == 4
    assert [N.order() for N in minimal_normal_subgroups(symmetric_group(3))] == [3]
    A5 = alternating_group(5)
    assert [N.order() for N in minimal_normal_subgroups(A5)] == [60]
    assert socle(A5).order() == 60


def test_minimal_normal_of_abelian_group():
    assert sorted(N.order() for N in minimal_normal_subgroups(cyclic_group(6))) == [2, 3]


def test_socle_check_examples():
    r = check_socle_primitive(spec("frobenius", 5, 4))
    assert r.passed and (r.witness["p"], r.witness["s"], r.witness["quotient_order"]) == (5, 1, 4)
    r = check_socle_primitive(symmetric_group(4))
    assert r.passed and (r.witness["p"], r.witness["s"], r.witness["quotient_order"]) == (2, 2, 6)
    assert r.witness["quotient_bound"] == 16
    r = check_socle_primitive(alternating_group(5))
    assert r.passed and r.witness["socle_factors"] == ["NA60"]


def test_subdirect_examples():
    diag = PermGroup([P([[0, 1], [2, 3]], 4)], 4)
    r = check_subdirect(diag, [0, 1], [2, 3])
    assert r.passed
    assert (r.witness["order_N1"], r.witness["order_N2"], r.witness["quotient_orders"]) == (1, 1, [2, 2, 2])
    full = PermGroup([P([[0, 1]], 4), P([[2, 3]], 4)], 4)
    r = check_subdirect(full, [0, 1], [2, 3])
    assert r.passed and r.witness["quotient_orders"] == [1, 1, 1]
    A5 = alternating_group(5)
    gens = [Permutation(g.images + tuple(5 + i for i in g.images)) for g in A5.generators]
    r = check_subdirect(PermGroup(gens, 10), range(5), range(5, 10))
    assert r.passed and (r.witness["order_N1"], r.witness["order_N2"]) == (1, 1)
    assert r.witness["factors_G"] == ["NA60"]


def test_subdirect_rejects_bad_domains():
    with pytest.raises(ValueError):
        check_subdirect(symmetric_group(4), [0, 1], [1, 2, 3])


def test_subdirect_instances_pass():
    instances = subdirect_instances()
    assert len(instances) >= 20
    for inst in instances:
        r = check_subdirect(inst.group, inst.domain1, inst.domain2, name=inst.name)
        assert r.passed, inst.name


def test_pi_and_exponent():
    assert (pi_product(symmetric_group(3)), exponent(symmetric_group(3))) == (6, 6)
    assert (pi_product(cyclic_group(4)), exponent(cyclic_group(4))) == (2, 4)
    F = spec("frobenius", 7, 3)
    assert (pi_product(F), exponent(F)) == (21, 21)


def test_limits_raise():
    with pytest.raises(ResourceLimitError):
        composition_series(symmetric_group(7), limit=1000)
    with pytest.raises(ResourceLimitError):
        exponent(symmetric_group(7), limit=1000)


def test_signature_equality():
    a = FactorSignature("nonabelian", 20160, ((1, 1), (2, 3)))
    b = FactorSignature("nonabelian", 20160, ((1, 1), (2, 5)))
    c = FactorSignature("nonabelian", 20160)
    assert a != b and a == c and b == c
    assert FactorSignature.abelian(3) == FactorSignature.abelian(3) != FactorSignature.abelian(2)


def _psl34_on_plane():
    """SL(3,4) acting on the 21 points of the projective plane over GF(4)."""
    # GF(4) = {0, 1, w, w^2} encoded 0..3; addition is XOR
    log = {1: 0, 2: 1, 3: 2}

    def fmul(a, b):
        return 0 if a == 0 or b == 0 else [1, 2, 3][(log[a] + log[b]) % 3]

    vectors = [(a, b, c) for a in range(4) for b in range(4) for c in range(4) if (a, b, c) != (0, 0, 0)]

    def normalize(v):
        lead = next(x for x in v if x)
        inv = [1, 2, 3][(-log[lead]) % 3]
        return tuple(fmul(inv, x) for x in v)

    pts = sorted({normalize(v) for v in vectors})
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for i in range(3):
        for j in range(3):
            if i != j:
                for a in (1, 2):
                    def act(v, i=i, j=j, a=a):
                        w = list(v)
                        w[j] ^= fmul(a, v[i])
                        return tuple(w)
                    gens.append(Permutation([index[normalize(act(p))] for p in pts]))
    return PermGroup(gens, len(pts))


def test_simple_groups_of_order_20160_are_distinguished():
    L = _psl34_on_plane()
    assert L.degree == 21 and L.order() == 20160
    f_l = composition_series(L).factors
    f_a = composition_series(alternating_group(8)).factors
    assert len(f_l) == len(f_a) == 1
    assert f_l[0].order == f_a[0].order == 20160
    assert f_l[0] != f_a[0]


@pytest.fixture(scope="module")
def oracle_corpus():
    return [(sp, G) for sp, G in enumerate_corpus(max_degree=8, max_order=400, seed_count=2)]


def test_factors_match_oracle(oracle_corpus):
    for sp, G in oracle_corpus:
        gens = [g.images for g in G.generators]
        abelian, nonabelian = oracles.factor_profile(gens, G.degree)
        s = composition_series(G)
        got_abelian = Counter(f.order for f in s.factors if f.is_abelian)
        got_nonabelian = math.prod(f.order for f in s.factors if not f.is_abelian)
        assert got_abelian == abelian, sp
        assert got_nonabelian == nonabelian, sp
        assert comp_a(G) == oracles.comp_a(gens, G.degree)


def test_exponent_matches_oracle(oracle_corpus):
    for sp, G in oracle_corpus:
        elements = oracles.closure([g.images for g in G.generators], G.degree)
        assert exponent(G) == oracles.exponent(elements), sp


def test_structure_invariants_over_corpus():
    from permbound import actions
    for sp, G in enumerate_corpus(max_degree=10, max_order=10**5, seed_count=2):
        s = composition_series(G)
        assert math.prod(s.factor_orders()) == G.order()
        assert all(f.order in (2, 3, 5, 7, 11, 13) or not f.is_abelian for f in s.factors)
        assert len(comp_a(G)) <= math.log2(G.order()) + 1e-9
        rev = composition_series(G, reverse=True)
        assert Counter(s.factors) == Counter(rev.factors), sp
        assert sorted(map(str, s.factors)) == sorted(map(str, rev.factors)), sp
        e = exponent(G)
        assert G.order() % e == 0 and all(e % p == 0 for p in {*comp_a(G)})
        if actions.is_primitive(G):
            soc = socle(G)
            assert G.is_normal(soc)
            assert all(N.is_transitive() for N in minimal_normal_subgroups(G)), sp

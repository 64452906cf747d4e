import pytest

from permbound import actions
from permbound.corpus import (GroupSpec, build, enumerate_corpus, export_corpus, random_transitive,
                              wreath_imprimitive, cyclic)
from permbound.perm import parse_generator_text


def test_closed_forms():
    G = build(GroupSpec("frobenius", (7, 3)))
    assert (G.degree, G.order()) == (7, 21)
    G = build(wreath_imprimitive(cyclic(2), cyclic(2)))
    assert (G.degree, G.order()) == (4, 8)
    G = build(GroupSpec("johnson", (5,)))
    assert (G.degree, G.order()) == (10, 120)
    G = build(GroupSpec("psl2", (7,)))
    assert (G.degree, G.order()) == (8, 168)


@pytest.mark.parametrize("spec", [GroupSpec("frobenius", (7, 4)), GroupSpec("frobenius", (8, 1)),
                                  GroupSpec("psl2", (3,)), GroupSpec("psl2", (9,))])
def test_invalid_parameters(spec):
    with pytest.raises(ValueError):
        build(spec)


def test_unknown_family():
    with pytest.raises(ValueError):
        GroupSpec("sporadic", (1,))


def test_random_transitive_contract():
    a = random_transitive(6, 10**6, 1)
    b = random_transitive(6, 10**6, 1)
    assert a is not None and a.is_transitive()
    assert a.generators == b.generators
    for seed in range(5):
        C2 = random_transitive(2, 10, seed)
        assert C2 is not None and C2.order() == 2
        G = random_transitive(8, 100, seed)
        assert G is None or (G.order() <= 100 and G.is_transitive())


def test_small_corpus_contents():
    c = enumerate_corpus(max_degree=7, max_order=10**4, seed_count=0)
    names = {str(s) for s, _ in c}
    expected = {f"cyclic({n})" for n in range(2, 8)} | {f"dihedral({n})" for n in range(3, 8)}
    expected |= {f"alternating({n})" for n in range(4, 8)}
    expected |= {"frobenius(7,3)", "frobenius(5,4)", "psl2(5)"}
    assert expected <= names
    # frobenius(p,2) has the same generators as dihedral(p) and is deduplicated;
    # psl2(7) acts on 8 points
    gens = {tuple(g.images for g in G.generators) for _, G in c}
    for p in (5, 7):
        assert tuple(g.images for g in build(GroupSpec("frobenius", (p, 2))).generators) in gens
    assert "psl2(7)" not in names
    assert any(G.degree == 5 and G.order() == 20 for _, G in c)
    assert len(c) == len(enumerate_corpus(max_degree=7, max_order=10**4, seed_count=0))


def test_empty_corpus():
    assert enumerate_corpus(max_degree=1) == []


@pytest.fixture(scope="module")
def full_corpus():
    return enumerate_corpus()


def test_corpus_invariants(full_corpus):
    assert 150 <= len(full_corpus) <= 300
    keys = set()
    for spec, G in full_corpus:
        assert G.is_transitive(), spec
        assert G.degree == spec.degree() <= 12
        assert G.order() <= 10**6
        if spec.expected_order() is not None:
            assert G.order() == spec.expected_order(), spec
        key = (G.degree, G.order(), tuple(sorted(g.images for g in G.generators)))
        assert key not in keys
        keys.add(key)
        if spec.family == "wreath_imprimitive":
            inner = spec.params[0].degree()
            blocks = [list(range(i * inner, (i + 1) * inner)) for i in range(spec.params[1].degree())]
            if inner > 1:
                assert blocks in [B.as_lists() for B in actions.minimal_block_systems(G)] \
                    or not actions.is_primitive(G)
        if spec.family == "frobenius" and spec.params[1] % 2 == 1:
            assert G.order() % 2 == 1


def test_corpus_is_bit_stable(full_corpus):
    again = enumerate_corpus()
    assert [(str(s), [g.images for g in G.generators]) for s, G in full_corpus] == \
        [(str(s), [g.images for g in G.generators]) for s, G in again]


def test_export(tmp_path):
    c = enumerate_corpus(max_degree=5, max_order=200, seed_count=1)
    paths = export_corpus(c, tmp_path)
    assert len(paths) == len(c)
    for path, (spec, G) in zip(paths, c):
        assert path.name.endswith(f"_{G.degree}.grp")
        degree, gens = parse_generator_text(path.read_text())
        assert degree == G.degree and gens == list(G.generators)

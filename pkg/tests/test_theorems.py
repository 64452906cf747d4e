import math

import pytest

from permbound import PermGroup, Permutation, alternating_group, cyclic_group, symmetric_group
from permbound import actions, theorems as T
from permbound.corpus import GroupSpec, build, key_lemma_instances
from permbound.orbitals import suborbit_containing
from permbound.report import FAIL, PASS, SKIPPED, dumps


def spec(family, *params):
    return build(GroupSpec(family, params))


def wreath(a, b):
    return build(GroupSpec("wreath_imprimitive", (a, b)))


def test_jordan():
    D5 = spec("dihedral", 5)
    r = T.check_jordan(D5)
    assert r.verdict == PASS
    assert [s["image_order"] for s in r.witness["suborbits"]] == [2, 2]
    assert T.check_jordan(symmetric_group(4)).verdict == PASS
    r = T.check_jordan(spec("johnson", 5))
    assert r.verdict == PASS and r.witness["stabilizer_order"] == 12
    assert sorted(s["image_order"] for s in r.witness["suborbits"]) == [6, 12]


def test_jordan_rejects_imprimitive():
    with pytest.raises(ValueError):
        T.check_jordan(cyclic_group(4))


def test_odd_order():
    r = T.check_odd_order(spec("frobenius", 7, 3))
    assert r.verdict == PASS and (r.witness["pi"], r.witness["exponent"]) == (21, 21)
    assert r.witness["pi_bound"] == pytest.approx(7 ** math.log2(7))
    r = T.check_odd_order(cyclic_group(5))
    assert r.verdict == PASS and r.witness["pi"] == 5
    W = wreath(GroupSpec("cyclic", (3,)), GroupSpec("cyclic", (3,)))
    assert W.order() == 81
    r = T.check_odd_order(W)
    assert r.verdict == PASS and r.witness["pi"] == 3


def test_odd_order_rejects_even():
    with pytest.raises(ValueError):
        T.check_odd_order(symmetric_group(3))


def test_prop3():
    r = T.check_prop3(symmetric_group(3))
    assert r.verdict == PASS
    assert r.witness["difference"] == [3] and r.witness["bound"] == math.log2(3)
    r = T.check_prop3(cyclic_group(5))
    assert r.verdict == PASS and r.witness["difference"] == [5]
    r = T.check_prop3(alternating_group(5))
    assert r.verdict == PASS and r.witness["difference"] == []


def test_prop3_fails_at_degree_two():
    # |{2} \ {}| = 1 is not strictly below log2(2) = 1
    r = T.check_prop3(cyclic_group(2))
    assert r.verdict == FAIL
    assert r.witness["difference_size"] == 1 and r.witness["bound"] == 1.0


def test_prop3_skipped_over_limit():
    r = T.check_prop3(symmetric_group(8), limit=100)
    assert r.verdict == SKIPPED and "limit" in r.to_dict()["witness"]["reason"]


def test_wielandt():
    J = spec("johnson", 5)
    r = T.check_wielandt(J)
    assert r.verdict == PASS and r.witness["T_order"] == 2
    assert r.witness["factors_T"] == ["C2"]
    assert r.witness["factors_stab_on_delta"] == r.witness["factors_stab_on_delta_paired"] == ["C2"]
    S4 = symmetric_group(4)
    r = T.check_wielandt(S4, 0, suborbit_containing(S4, 0, 1))
    assert r.verdict == PASS and r.witness["T_order"] == 1
    D5 = spec("dihedral", 5)
    r = T.check_wielandt(D5, 0, suborbit_containing(D5, 0, 1))
    assert r.verdict == PASS and r.witness["T_order"] == 1


def test_decompose_transitive_c4():
    tr = T.decompose_transitive(cyclic_group(4))
    assert tr.case == T.INTRANSITIVE_NORMAL and (tr.t, tr.m) == (2, 2)
    assert tr.certificate["blocks"] == [[0, 2], [1, 3]] and tr.certificate["N_order"] == 2
    assert len(tr.comp_Gx) == 0 and tr.rhs == 2.0 and tr.holds


def test_decompose_transitive_quasiprimitive():
    A5 = alternating_group(5)
    C5 = A5.subgroup([Permutation.from_cycles([[0, 1, 2, 3, 4]], 5)])
    G = actions.coset_action(A5, C5).image
    tr = T.decompose_transitive(G)
    assert tr.case == T.QUASIPRIMITIVE_NOT_PRIMITIVE
    assert (tr.t, tr.m) == (6, 2) and tr.X.order() == 60
    assert tr.comp_Gx == {5} and tr.holds and tr.certificate["containment"]


def test_decompose_transitive_wreath():
    W = wreath(GroupSpec("cyclic", (2,)), GroupSpec("cyclic", (2,)))
    tr = T.decompose_transitive(W)
    assert tr.case == T.INTRANSITIVE_NORMAL and (tr.t, tr.m) == (2, 2)
    assert tr.comp_Gx == {2} and len(tr.comp_X_alpha) == len(tr.comp_Y_beta) == 0
    assert tr.rhs == 2.0 and tr.holds


def test_decompose_transitive_rejects_primitive():
    with pytest.raises(ValueError):
        T.decompose_transitive(symmetric_group(4))


def test_decompose_primitive():
    r = T.decompose_primitive(symmetric_group(4))
    assert r.case == T.ABELIAN_SOCLE_BOUND and r.delta.points == (1, 2, 3)
    assert r.comp_Gx == {2, 3} and r.bound == 4.0 and r.holds
    r = T.decompose_primitive(symmetric_group(6))
    assert r.case == T.PRIMITIVE_P_NONABELIAN_SOCLE and r.delta.size == 5
    assert r.comp_Gx == {2} and r.comp_Py == {2, 3} and r.holds
    r = T.decompose_primitive(spec("johnson", 5))
    assert r.case == T.ABELIAN_SOCLE_BOUND and r.delta.size == 3 and r.P.order() == 6
    assert r.comp_Gx == {2, 3} and r.bound == pytest.approx(math.log2(10) ** 2) and r.holds


def test_decompose_primitive_imprimitive_p():
    # Sym(3) wr Sym(2) in product action on 9 points: the stabilizer acts on the
    # 4 points sharing one coordinate with x as Sym(2) wr Sym(2), which is imprimitive
    G = spec("wreath_power", GroupSpec("symmetric", (3,)), 2)
    r = T.decompose_primitive(G)
    assert r.case == T.IMPRIMITIVE_P and r.delta.size == 4
    assert r.nested.t * r.nested.m <= r.delta.size and r.holds


def test_decompose_primitive_errors():
    with pytest.raises(ValueError):
        T.decompose_primitive(cyclic_group(5))
    with pytest.raises(ValueError):
        T.decompose_primitive(cyclic_group(4))


def test_theorem7_examples():
    tr = T.verify_theorem7(symmetric_group(4))
    assert tr.root.value == 2 and tr.root.bound == 8.0 and tr.root.depth() == 1 and tr.holds
    tr = T.verify_theorem7(cyclic_group(7))
    assert tr.root.kind == T.LEAF_REGULAR and tr.root.value == 0 and tr.holds
    W = wreath(GroupSpec("symmetric", (3,)), GroupSpec("symmetric", (3,)))
    tr = T.verify_theorem7(W)
    assert tr.root.value <= 2 and tr.root.bound == pytest.approx(2 * math.log2(9) ** 2)
    assert any(isinstance(nd.reduction, T.TransitiveReduction)
               and nd.reduction.case == T.INTRANSITIVE_NORMAL for nd in tr.root.nodes())
    assert tr.holds


def test_theorem7_odd_order_leaf():
    tr = T.verify_theorem7(spec("frobenius", 7, 3))
    assert tr.root.kind == T.LEAF_ODD_ORDER and tr.holds


def test_theorem7_json_is_stable():
    W = wreath(GroupSpec("symmetric", (3,)), GroupSpec("cyclic", (2,)))
    a = dumps(T.verify_theorem7(W, name="w").to_dict())
    b = dumps(T.verify_theorem7(W, name="w").to_dict())
    assert a == b and '"lemma": "thm:7"' in a


def test_split_arithmetic():
    row = T.split_arithmetic(16, 2, 8, 2 * 4)
    assert row["ok"] and (row["t"], row["k"]) == (2, 8)
    row = T.split_arithmetic(12, 6, 2, 2 * math.log2(12))
    assert row["t"] == 2 and row["k"] == 6 and row["ok"]


def test_key_lemma_instance():
    inst = key_lemma_instances()[0]
    r = T.check_key_lemma_instance(inst.group, inst.normal)
    assert r.verdict == PASS
    assert (r.witness["k"], r.witness["n"], r.witness["N_transitive"]) == (5, 60, True)
    assert not r.witness["triggered"]


def test_key_lemma_preconditions():
    with pytest.raises(ValueError):
        T.check_key_lemma_instance(symmetric_group(5), PermGroup([], 5))
    C4 = cyclic_group(4)
    with pytest.raises(ValueError):
        T.check_key_lemma_instance(C4, C4)

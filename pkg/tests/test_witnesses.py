import pytest

from coheyt.catalog import B4, L1, L2, L3, L5, chain
from coheyt.enumeration import enumerate_posets, isomorphic
from coheyt.errors import FactorMismatch, HypothesisViolated, VarietyMismatch
from coheyt.lattice import Algebra, build_poset, strictly_way_below
from coheyt.varieties import check_equational, component_factorization, in_variety
from coheyt.witnesses import (
    bounded_extension_search,
    check_density,
    check_splitting,
    density_extension,
    density_predicate,
    identity_plan,
    iter_extensions,
    product_lift_witness,
    split_plan,
    splitting_extension,
    splitting_predicate,
)


def density_ok(E, a, c, variant, b):
    """Postcondition oracle written with the public element operations only."""
    A = E(a)
    if not b or not strictly_way_below(b, A):
        return False
    if variant in (3, 4, 5):
        return True
    return strictly_way_below(E(c), b)


def splitting_ok(E, a, b1, b2, a1, a2):
    A, B1, B2 = E(a), E(b1), E(b2)
    return (bool(a1) and bool(a2) and A - a2 == a1 and A - a1 == a2
            and B1 <= a1 and B2 <= a2 and a1 & a2 == B1 & B2)


def test_non_witnesses_in_finite_algebras():
    assert check_density(L1(), 1).holds
    rep = check_density(L2(), 1)
    L = L2()
    assert not rep.holds
    assert rep.first_failure == {"a": L.one, "c": L.zero}
    rep = check_splitting(B4(), 1)
    B = B4()
    assert not rep.holds
    assert rep.first_failure == {"a": B.principal("p"), "b1": B.zero, "b2": B.zero}


def test_density_examples():
    L = L3()
    Lp, E, b = density_extension(L, L.one, L.principal("c"), 1)
    assert isomorphic(Lp.poset, chain(4).poset)
    assert density_ok(E, L.one, L.principal("c"), 1, b)
    B = B4()
    Lp, E, b = density_extension(B, B.one, B.zero, 3)
    assert isomorphic(Lp.poset, build_poset(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]))
    assert in_variety(Lp, "V3")
    M = L2()
    Lp, E, b = density_extension(M, M.one, M.zero, 6)
    assert isomorphic(Lp.poset, L3().poset)
    assert len(b.members) == 1


def test_splitting_examples():
    L = L2()
    Lp, E, a1, a2 = splitting_extension(L, L.one, L.zero, L.zero, 1)
    assert isomorphic(Lp.poset, B4().poset)
    assert len(a1.members) == len(a2.members) == 1
    M = L3()
    c = M.principal("c")
    res = splitting_extension(M, M.one, c, M.zero, 1)
    Lp, E, a1, a2 = res
    assert isomorphic(Lp.poset, build_poset(["a", "b", "z"], [("a", "b")]))
    assert E(c) <= a1 and len(a2.members) == 1 and not (a1 & a2)
    assert [Lp.poset.names[i] for i in sorted(a1.members)] == ["c#1", "t#1"]
    assert a2.names() == ["t#2"]


def test_v4_splitting_on_l5():
    L = L5()
    c = L.principal("c")
    Lp, E, a1, a2 = splitting_extension(L, c, L.zero, L.zero, 4)
    assert len(Lp.poset) == 4
    assert sorted(len(Lp.poset.names_of(Lp.poset.up[i])) for i in range(4)) == [1, 1, 3, 3]
    assert in_variety(Lp, "V4") and not in_variety(Lp, "V2")
    assert len(a1.members) == len(a2.members) == 1


def test_hypothesis_and_variety_errors():
    L = L5()
    x1 = L.principal("x1")
    with pytest.raises(HypothesisViolated):
        density_extension(L, L.zero, None, 1)
    with pytest.raises(HypothesisViolated):
        density_extension(L, L.one, x1, 1)  # x1 is not way below 1
    with pytest.raises(VarietyMismatch):
        density_extension(L, L.one, L.zero, 6)
    with pytest.raises(HypothesisViolated):
        splitting_extension(L, L.one, L.principal("c"), L.principal("c"), 6)


def test_split_plan_of_chain_is_two_chains():
    for n in range(2, 6):
        L = chain(n)
        p = L.poset
        plan = split_plan(p, p.full, 0, 0)
        q = plan.index_set
        comps = q.connected_components()
        assert len(comps) == 2
        for comp in comps:
            pts = [i for i in range(len(q)) if comp >> i & 1]
            assert all(q.leq(i, j) or q.leq(j, i) for i in pts for j in pts)


def test_product_lift():
    B = B4()
    fact = component_factorization(B)
    per = [split_plan(f.poset, f.poset.full, 0, 0) for f in fact.factors]
    plan = product_lift_witness(fact, per)
    assert len(plan.index_set) == 4
    assert plan.witnesses["a1"] and plan.witnesses["a2"]
    # one factor with a = 0 contributes nothing but the combined witness is nonzero
    per = [split_plan(fact.factors[0].poset, fact.factors[0].poset.full, 0, 0),
           identity_plan(fact.factors[1].poset, {"a1": 0, "a2": 0})]
    plan = product_lift_witness(fact, per)
    assert plan.witnesses["a1"] and plan.witnesses["a2"]
    with pytest.raises(FactorMismatch):
        product_lift_witness(fact, per[:1])


def test_bounded_search_examples():
    assert bounded_extension_search(L3(), lambda e: None, 1) is None
    L = L2()
    found = bounded_extension_search(L, density_predicate(L.one, L.zero, 1), 1)
    assert found is not None
    Lp, E, wit = found
    assert isomorphic(Lp.poset, L3().poset)
    M = L5()
    c = M.principal("c")
    found = bounded_extension_search(M, splitting_predicate(M.one, c, c), 0, "V4")
    Lp, E, wit = found
    assert len(Lp.poset) == 3
    assert {wit["a1"], wit["a2"]} == {E(M.principal("x1")), E(M.principal("x2"))}


def test_constructions_agree_with_search_on_small_cases():
    # both the construction and the brute-force search must find witnesses
    for P in list(enumerate_posets(2)):
        L = Algebra(P)
        for a in L.elements():
            if not a:
                continue
            res = density_extension(L, a, L.zero, 1)
            assert density_ok(res.embedding, a, L.zero, 1, res.witnesses["b"])
            assert bounded_extension_search(L, density_predicate(a, L.zero, 1), 2) is not None
            res = splitting_extension(L, a, L.zero, L.zero, 1)
            assert splitting_ok(res.embedding, a, L.zero, L.zero, *res.witnesses.values())
            assert bounded_extension_search(L, splitting_predicate(a, L.zero, L.zero), 2) is not None


def test_iter_extensions_are_embeddings():
    L = L3()
    count = 0
    for emb in iter_extensions(L, 1):
        count += 1
        assert all(emb(a) <= emb(b) for a in L.elements() for b in L.elements() if a <= b)
    assert count > 1


@pytest.mark.parametrize("variant", [1, 2, 3, 4, 5, 6])
def test_witness_outputs_on_three_point_posets(variant):
    tag = f"V{variant}"
    for P in enumerate_posets(3):
        L = Algebra(P)
        if not in_variety(L, tag):
            continue
        for inp, _ in check_density(L, variant).instances:
            res = density_extension(L, inp["a"], inp["c"], variant)
            assert density_ok(res.embedding, inp["a"], inp["c"], variant, res.witnesses["b"])
            assert check_equational(res.extension, tag).member
        for inp, _ in check_splitting(L, variant).instances:
            res = splitting_extension(L, inp["a"], inp["b1"], inp["b2"], variant)
            assert splitting_ok(res.embedding, inp["a"], inp["b1"], inp["b2"],
                                res.witnesses["a1"], res.witnesses["a2"])
            assert check_equational(res.extension, tag).member


def test_witness_soundness_on_five_point_posets():
    # every hypothesis tuple; membership by the poset criterion, which the
    # variety tests show agrees with the equations
    count = 0
    for P in enumerate_posets(5):
        L = Algebra(P)
        for variant in range(1, 7):
            tag = f"V{variant}"
            if not in_variety(L, tag):
                continue
            for inp, _ in check_density(L, variant).instances:
                res = density_extension(L, inp["a"], inp["c"], variant)
                assert density_ok(res.embedding, inp["a"], inp["c"], variant, res.witnesses["b"])
                assert in_variety(res.extension, tag)
                count += 1
            for inp, _ in check_splitting(L, variant).instances:
                res = splitting_extension(L, inp["a"], inp["b1"], inp["b2"], variant)
                assert splitting_ok(res.embedding, inp["a"], inp["b1"], inp["b2"],
                                    res.witnesses["a1"], res.witnesses["a2"])
                assert in_variety(res.extension, tag)
                count += 1
    assert count == 3211 + 12910

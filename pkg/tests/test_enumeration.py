import itertools

import pytest

from coheyt.catalog import B4, L2, L3, L5, L5_star
from coheyt.enumeration import canonical_form, enumerate_posets, enumerate_subalgebras, isomorphic
from coheyt.errors import CapExceeded
from coheyt.lattice import Poset, build_poset


def brute_force_classes(n):
    """Orderly-generation oracle: every strict relation on n labelled points,
    keep the partial orders, canonicalise by minimising over all relabelings."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    classes = set()
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        rel = {pr for pr, on in zip(pairs, choice) if on}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        best = min(
            tuple(sorted((perm[i], perm[j]) for i, j in rel))
            for perm in itertools.permutations(range(n))
        )
        classes.add(best)
    return len(classes)


@pytest.mark.parametrize("n", range(5))
def test_counts_match_oracle(n):
    assert len(list(enumerate_posets(n))) == brute_force_classes(n)


def test_small_counts():
    assert len(list(enumerate_posets(0))) == 1
    assert len(list(enumerate_posets(2))) == 2
    # further terms of the unlabelled-poset sequence, derived by the same generator
    assert [len(list(enumerate_posets(n))) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_posets(9, cap=8))


def test_relabel_and_distinguish():
    p = build_poset(["a", "b", "c"], [("a", "c")])
    q = build_poset(["z", "y", "x"], [("x", "y")])
    assert isomorphic(p, q)
    assert canonical_form(p) == canonical_form(q)
    chain = build_poset(["a", "b"], [("a", "b")])
    anti = build_poset(["a", "b"], [])
    assert not isomorphic(chain, anti)
    assert not isomorphic(L5().poset, L5_star().poset)


def test_canonical_form_invariant_under_permutation():
    p = L5_star().poset
    for perm in itertools.permutations(range(3)):
        names = [p.names[i] for i in perm]
        down = []
        for i in perm:
            m = 0
            for k, j in enumerate(perm):
                if p.leq(j, i):
                    m |= 1 << k
            down.append(m)
        assert canonical_form(Poset(names, down)) == canonical_form(p)


def test_subalgebra_enumeration_examples():
    assert [s.carrier_masks for s in enumerate_subalgebras(L2())] == [(0, 1)]
    assert [len(s) for s in enumerate_subalgebras(L3())] == [2, 3]
    assert [len(s) for s in enumerate_subalgebras(B4())] == [2, 4]
